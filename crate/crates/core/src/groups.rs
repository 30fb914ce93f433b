//! Concrete arithmetic for `D_p`, `W = C_q ⋊ (D_p × D_p)` and the structured
//! groups `G_Γ × C₂^I = C_q^R ⋊ (C_p^V ⋊ C₂^{V∪I})`.
//!
//! `C₂` is written additively as `{0, 1}`; `chi` turns a bit into the sign
//! `±1` by which it acts. Every group here has a canonical integer encoding,
//! a big-endian mixed-radix number with the identity at `0`:
//!
//! * `D_p`: digits `[y, x]`, so `code = 2y + x`;
//! * `W`: digits `[z, y_b, y_c, x_b, x_c]`;
//! * structured: digits `[z_r.., y_v.., x_v.., x_i..]` in label order.
//!
//! The `W` layout coincides with the structured group of a single edge.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::gf2::F2Vector;
use crate::group::{FiniteGroup, Hom, TableGroup};

/// Enough for any encoding that fits in a `u64`.
const MAX_COORDS: usize = 64;

fn chi(x: u8) -> bool {
    // true means the sign is -1
    x == 1
}

fn signed(v: u32, negate: bool, m: u32) -> u32 {
    if negate && v != 0 {
        m - v
    } else {
        v
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn check_primes(p: u32, q: u32) -> Result<()> {
    for (name, v) in [("p", p), ("q", q)] {
        if v < 3 || !is_prime(v) {
            return Err(Error::Params(alloc::format!("{name} = {v} is not an odd prime")));
        }
    }
    if p == q {
        return Err(Error::Params("p and q must differ".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DpElement {
    pub p: u32,
    pub y: u32,
    pub x: u8,
}

impl DpElement {
    pub fn new(p: u32, y: u32, x: u8) -> Self {
        debug_assert!(y < p && x < 2);
        DpElement { p, y, x }
    }

    pub fn identity(p: u32) -> Self {
        Self::new(p, 0, 0)
    }

    /// The rotation generator.
    pub fn gamma(p: u32) -> Self {
        Self::new(p, 1, 0)
    }

    /// The reflection generator.
    pub fn beta(p: u32) -> Self {
        Self::new(p, 0, 1)
    }

    pub fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let y = (self.y + signed(o.y, chi(self.x), self.p)) % self.p;
        Self::new(self.p, y, self.x ^ o.x)
    }

    pub fn inv(self) -> Self {
        Self::new(self.p, signed(self.y, !chi(self.x), self.p), self.x)
    }

    /// The sign map onto `C₂`.
    pub fn tau(self) -> u8 {
        self.x
    }

    pub fn is_identity(self) -> bool {
        self.y == 0 && self.x == 0
    }

    pub fn order(self) -> u32 {
        if self.x == 1 {
            2
        } else if self.y == 0 {
            1
        } else {
            self.p
        }
    }

    pub fn encode(self) -> usize {
        2 * self.y as usize + self.x as usize
    }

    pub fn decode(p: u32, code: usize) -> Self {
        Self::new(p, (code / 2) as u32, (code % 2) as u8)
    }

    pub fn all(p: u32) -> impl Iterator<Item = DpElement> {
        (0..2 * p as usize).map(move |c| Self::decode(p, c))
    }
}

impl fmt::Display for DpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.y, self.x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WElement {
    pub q: u32,
    pub z: u32,
    pub b: DpElement,
    pub c: DpElement,
}

impl WElement {
    pub fn new(q: u32, z: u32, b: DpElement, c: DpElement) -> Self {
        debug_assert!(z < q && b.p == c.p);
        WElement { q, z, b, c }
    }

    pub fn identity(p: u32, q: u32) -> Self {
        Self::new(q, 0, DpElement::identity(p), DpElement::identity(p))
    }

    /// The generator of the normal `C_q`.
    pub fn delta(p: u32, q: u32) -> Self {
        Self::new(q, 1, DpElement::identity(p), DpElement::identity(p))
    }

    fn twist(self) -> bool {
        chi(self.b.tau()) != chi(self.c.tau())
    }

    pub fn mul(self, o: Self) -> Self {
        let z = (self.z + signed(o.z, self.twist(), self.q)) % self.q;
        Self::new(self.q, z, self.b.mul(o.b), self.c.mul(o.c))
    }

    pub fn inv(self) -> Self {
        Self::new(self.q, signed(self.z, !self.twist(), self.q), self.b.inv(), self.c.inv())
    }

    /// The projection onto `D_p × D_p`.
    pub fn lambda(self) -> (DpElement, DpElement) {
        (self.b, self.c)
    }

    pub fn is_identity(self) -> bool {
        self.z == 0 && self.b.is_identity() && self.c.is_identity()
    }

    pub fn encode(self) -> usize {
        let p = self.b.p as usize;
        let digits = [
            (self.z as usize, self.q as usize),
            (self.b.y as usize, p),
            (self.c.y as usize, p),
            (self.b.x as usize, 2),
            (self.c.x as usize, 2),
        ];
        digits.iter().fold(0, |acc, &(d, r)| acc * r + d)
    }

    pub fn decode(p: u32, q: u32, mut code: usize) -> Self {
        let mut take = |r: usize| {
            let d = code % r;
            code /= r;
            d
        };
        let cx = take(2) as u8;
        let bx = take(2) as u8;
        let cy = take(p as usize) as u32;
        let by = take(p as usize) as u32;
        let z = take(q as usize) as u32;
        Self::new(q, z, DpElement::new(p, by, bx), DpElement::new(p, cy, cx))
    }

    pub fn all(p: u32, q: u32) -> impl Iterator<Item = WElement> {
        (0..(4 * p * p * q) as usize).map(move |c| Self::decode(p, q, c))
    }
}

impl fmt::Display for WElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{};{})", self.z, self.b, self.c)
    }
}

pub fn dp_group(p: u32) -> TableGroup {
    TableGroup::from_fn(2 * p as usize, |a, b| {
        DpElement::decode(p, a).mul(DpElement::decode(p, b)).encode()
    })
    .expect("D_p table")
}

pub fn w_group(p: u32, q: u32) -> TableGroup {
    TableGroup::from_fn((4 * p * p * q) as usize, |a, b| {
        WElement::decode(p, q, a).mul(WElement::decode(p, q, b)).encode()
    })
    .expect("W table")
}

/// `D_q`, encoded like `D_p` with `q` rotations.
pub fn dq_group(q: u32) -> TableGroup {
    dp_group(q)
}

/// The fixed primes and the labeled index sets `V`, `R`, `I`.
///
/// Labels are kept sorted; an edge is a pair of vertex indices `(u, v)` with
/// `u < v`, and edges are sorted by that pair. The vertex `u` occupies the
/// first `D_p` slot of the edge's `W` copy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Params {
    p: u32,
    q: u32,
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    extra: Vec<String>,
    radices: Vec<u32>,
    order: u64,
}

impl Params {
    pub fn new<S: AsRef<str>>(p: u32, q: u32, vertices: &[S], edges: &[(S, S)], extra: &[S]) -> Result<Self> {
        check_primes(p, q)?;
        let mut vs: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        vs.sort();
        let mut is: Vec<String> = extra.iter().map(|s| s.as_ref().to_string()).collect();
        is.sort();
        let mut all: Vec<&String> = vs.iter().chain(is.iter()).collect();
        all.sort();
        if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Params(alloc::format!("duplicate label `{}`", w[0])));
        }
        let mut es = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let find = |l: &str| {
                vs.binary_search_by(|v| v.as_str().cmp(l))
                    .map_err(|_| Error::Params(alloc::format!("edge endpoint `{l}` is not a vertex")))
            };
            let (u, v) = (find(a)?, find(b)?);
            if u == v {
                return Err(Error::Params(alloc::format!("self-loop at `{a}`")));
            }
            es.push((u.min(v), u.max(v)));
        }
        es.sort();
        if let Some(w) = es.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Params(alloc::format!(
                "duplicate edge `{}`-`{}`",
                vs[w[0].0],
                vs[w[0].1]
            )));
        }
        let mut radices = Vec::new();
        radices.extend(core::iter::repeat_n(q, es.len()));
        radices.extend(core::iter::repeat_n(p, vs.len()));
        radices.extend(core::iter::repeat_n(2, vs.len() + is.len()));
        let order = radices
            .iter()
            .try_fold(1u64, |acc, &r| acc.checked_mul(r as u64))
            .filter(|&o| radices.len() <= MAX_COORDS && usize::try_from(o).is_ok())
            .ok_or_else(|| Error::Params("group order does not fit the encoding".into()))?;
        Ok(Params {
            p,
            q,
            vertices: vs,
            edges: es,
            extra: is,
            radices,
            order,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn extra(&self) -> &[String] {
        &self.extra
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Length of the `x`-array, `|V| + |I|`.
    pub fn bit_count(&self) -> usize {
        self.vertices.len() + self.extra.len()
    }

    pub fn edge_label(&self, r: usize) -> (&str, &str) {
        let (u, v) = self.edges[r];
        (&self.vertices[u], &self.vertices[v])
    }

    /// Label of a position in the `x`-array.
    pub fn bit_label(&self, w: usize) -> &str {
        if w < self.vertices.len() {
            &self.vertices[w]
        } else {
            &self.extra[w - self.vertices.len()]
        }
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(label))
            .map_err(|_| Error::Label(label.to_string()))
    }

    pub fn extra_index(&self, label: &str) -> Result<usize> {
        self.extra
            .binary_search_by(|v| v.as_str().cmp(label))
            .map_err(|_| Error::Label(label.to_string()))
    }

    pub fn edge_index(&self, a: &str, b: &str) -> Result<usize> {
        let (u, v) = (self.vertex_index(a)?, self.vertex_index(b)?);
        self.edges
            .binary_search(&(u.min(v), u.max(v)))
            .map_err(|_| Error::Label(alloc::format!("{a}-{b}")))
    }

    pub fn edges_at(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, &(a, b))| a == v || b == v)
            .map(|(r, _)| r)
    }

    fn z_off(&self) -> usize {
        0
    }
    fn y_off(&self) -> usize {
        self.edges.len()
    }
    fn x_off(&self) -> usize {
        self.edges.len() + self.vertices.len()
    }
}

/// Digits of one structured element on the stack.
#[derive(Clone, Copy)]
struct Digits {
    d: [u32; MAX_COORDS],
}

impl Digits {
    fn decode(params: &Params, mut code: usize) -> Self {
        let mut d = [0u32; MAX_COORDS];
        for k in (0..params.radices.len()).rev() {
            let r = params.radices[k] as usize;
            d[k] = (code % r) as u32;
            code /= r;
        }
        Digits { d }
    }

    fn encode(&self, params: &Params) -> usize {
        params
            .radices
            .iter()
            .zip(&self.d)
            .fold(0, |acc, (&r, &d)| acc * r as usize + d as usize)
    }

    fn mul(&self, o: &Digits, params: &Params) -> Digits {
        let (zo, yo, xo) = (params.z_off(), params.y_off(), params.x_off());
        let mut out = Digits { d: [0; MAX_COORDS] };
        for (r, &(u, v)) in params.edges.iter().enumerate() {
            let neg = (self.d[xo + u] ^ self.d[xo + v]) == 1;
            out.d[zo + r] = (self.d[zo + r] + signed(o.d[zo + r], neg, params.q)) % params.q;
        }
        for v in 0..params.vertices.len() {
            let neg = self.d[xo + v] == 1;
            out.d[yo + v] = (self.d[yo + v] + signed(o.d[yo + v], neg, params.p)) % params.p;
        }
        for w in 0..params.bit_count() {
            out.d[xo + w] = self.d[xo + w] ^ o.d[xo + w];
        }
        out
    }

    fn inv(&self, params: &Params) -> Digits {
        let (zo, yo, xo) = (params.z_off(), params.y_off(), params.x_off());
        let mut out = *self;
        for (r, &(u, v)) in params.edges.iter().enumerate() {
            let neg = (self.d[xo + u] ^ self.d[xo + v]) == 1;
            out.d[zo + r] = signed(self.d[zo + r], !neg, params.q);
        }
        for v in 0..params.vertices.len() {
            out.d[yo + v] = signed(self.d[yo + v], self.d[xo + v] == 0, params.p);
        }
        out
    }
}

/// An element of `G_Γ × C₂^I` as residue arrays.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructuredElement {
    params: Arc<Params>,
    pub z: Vec<u32>,
    pub y: Vec<u32>,
    pub x: Vec<u8>,
}

/// What a projection lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Vertex(usize),
    Edge(usize),
    Extra(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    Dp(DpElement),
    W(WElement),
    Bit(u8),
}

/// The tuple `(a_v, b_r, c_i)` in `D_p^V × W^R × C₂^I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductForm {
    pub vertices: Vec<DpElement>,
    pub edges: Vec<WElement>,
    pub extra: Vec<u8>,
}

impl StructuredElement {
    pub fn identity(params: &Arc<Params>) -> Self {
        StructuredElement {
            params: params.clone(),
            z: vec![0; params.edges.len()],
            y: vec![0; params.vertices.len()],
            x: vec![0; params.bit_count()],
        }
    }

    pub fn from_arrays(params: &Arc<Params>, z: Vec<u32>, y: Vec<u32>, x: Vec<u8>) -> Result<Self> {
        let ok = z.len() == params.edges.len()
            && y.len() == params.vertices.len()
            && x.len() == params.bit_count()
            && z.iter().all(|&v| v < params.q)
            && y.iter().all(|&v| v < params.p)
            && x.iter().all(|&v| v < 2);
        if !ok {
            return Err(Error::Params("residue arrays do not match the parameters".into()));
        }
        Ok(StructuredElement {
            params: params.clone(),
            z,
            y,
            x,
        })
    }

    pub fn params(&self) -> &Arc<Params> {
        &self.params
    }

    fn digits(&self) -> Digits {
        let mut d = [0u32; MAX_COORDS];
        let (yo, xo) = (self.params.y_off(), self.params.x_off());
        d[..yo].copy_from_slice(&self.z);
        d[yo..xo].copy_from_slice(&self.y);
        for (k, &b) in self.x.iter().enumerate() {
            d[xo + k] = b as u32;
        }
        Digits { d }
    }

    fn from_digits(params: &Arc<Params>, d: &Digits) -> Self {
        let (yo, xo) = (params.y_off(), params.x_off());
        StructuredElement {
            params: params.clone(),
            z: d.d[..yo].to_vec(),
            y: d.d[yo..xo].to_vec(),
            x: d.d[xo..xo + params.bit_count()].iter().map(|&b| b as u8).collect(),
        }
    }

    fn same_params(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.params, &o.params) || self.params == o.params {
            Ok(())
        } else {
            Err(Error::Params("elements belong to different groups".into()))
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_params(o)?;
        let d = self.digits().mul(&o.digits(), &self.params);
        Ok(Self::from_digits(&self.params, &d))
    }

    pub fn inv(&self) -> Self {
        Self::from_digits(&self.params, &self.digits().inv(&self.params))
    }

    pub fn is_identity(&self) -> bool {
        self.z.iter().all(|&v| v == 0) && self.y.iter().all(|&v| v == 0) && self.x.iter().all(|&v| v == 0)
    }

    pub fn order(&self) -> u64 {
        let mut n = 1;
        let mut g = self.clone();
        while !g.is_identity() {
            g = g.mul(self).expect("same parameters");
            n += 1;
        }
        n
    }

    pub fn encode(&self) -> usize {
        self.digits().encode(&self.params)
    }

    pub fn decode(params: &Arc<Params>, code: usize) -> Result<Self> {
        if code as u64 >= params.order {
            return Err(Error::Params(alloc::format!("code {code} out of range")));
        }
        Ok(Self::from_digits(params, &Digits::decode(params, code)))
    }

    pub fn target(&self, t: Target) -> Projection {
        match t {
            Target::Vertex(v) => Projection::Dp(self.vertex_part(v)),
            Target::Edge(r) => Projection::W(self.edge_part(r)),
            Target::Extra(i) => Projection::Bit(self.x[self.params.vertices.len() + i]),
        }
    }

    pub fn vertex_part(&self, v: usize) -> DpElement {
        DpElement::new(self.params.p, self.y[v], self.x[v])
    }

    pub fn edge_part(&self, r: usize) -> WElement {
        let (u, v) = self.params.edges[r];
        WElement::new(self.params.q, self.z[r], self.vertex_part(u), self.vertex_part(v))
    }

    pub fn project_vertex(&self, label: &str) -> Result<DpElement> {
        Ok(self.vertex_part(self.params.vertex_index(label)?))
    }

    pub fn project_edge(&self, a: &str, b: &str) -> Result<WElement> {
        Ok(self.edge_part(self.params.edge_index(a, b)?))
    }

    pub fn project_extra(&self, label: &str) -> Result<u8> {
        let i = self.params.extra_index(label)?;
        Ok(self.x[self.params.vertices.len() + i])
    }

    /// `(g)_v`: the `D_p` element placed at vertex `v`.
    pub fn at_vertex(params: &Arc<Params>, v: usize, g: DpElement) -> Self {
        let mut e = Self::identity(params);
        e.y[v] = g.y;
        e.x[v] = g.x;
        e
    }

    /// `(g)_r`: the `W` element placed on edge `r` and its two endpoints.
    pub fn at_edge(params: &Arc<Params>, r: usize, g: WElement) -> Self {
        let (u, v) = params.edges[r];
        let mut e = Self::identity(params);
        e.z[r] = g.z;
        e.y[u] = g.b.y;
        e.x[u] = g.b.x;
        e.y[v] = g.c.y;
        e.x[v] = g.c.x;
        e
    }

    /// The generator of the extra `C₂` factor `i`.
    pub fn at_extra(params: &Arc<Params>, i: usize) -> Self {
        let mut e = Self::identity(params);
        e.x[params.vertices.len() + i] = 1;
        e
    }

    pub fn inject_vertex(params: &Arc<Params>, label: &str, g: DpElement) -> Result<Self> {
        Ok(Self::at_vertex(params, params.vertex_index(label)?, g))
    }

    pub fn inject_edge(params: &Arc<Params>, a: &str, b: &str, g: WElement) -> Result<Self> {
        Ok(Self::at_edge(params, params.edge_index(a, b)?, g))
    }

    pub fn inject_extra(params: &Arc<Params>, label: &str) -> Result<Self> {
        Ok(Self::at_extra(params, params.extra_index(label)?))
    }

    /// The quotient map onto `C₂^{V∪I}`.
    pub fn xi(&self) -> F2Vector {
        F2Vector::from_bits(self.x.iter().map(|&b| b == 1))
    }

    pub fn to_product_form(&self) -> ProductForm {
        let vs = self.params.vertices.len();
        ProductForm {
            vertices: (0..vs).map(|v| self.vertex_part(v)).collect(),
            edges: (0..self.params.edges.len()).map(|r| self.edge_part(r)).collect(),
            extra: self.x[vs..].to_vec(),
        }
    }

    /// Inverse of [`Self::to_product_form`]; rejects tuples violating
    /// `λ(b_r) = (a_u, a_v)`.
    pub fn from_product_form(params: &Arc<Params>, f: &ProductForm) -> Result<Self> {
        if f.vertices.len() != params.vertices.len()
            || f.edges.len() != params.edges.len()
            || f.extra.len() != params.extra.len()
        {
            return Err(Error::Params("product form has the wrong shape".into()));
        }
        for (r, w) in f.edges.iter().enumerate() {
            let (u, v) = params.edges[r];
            if w.lambda() != (f.vertices[u], f.vertices[v]) {
                return Err(Error::Contract(alloc::format!("edge {r} disagrees with its endpoints")));
            }
        }
        let mut x: Vec<u8> = f.vertices.iter().map(|a| a.x).collect();
        x.extend_from_slice(&f.extra);
        Self::from_arrays(
            params,
            f.edges.iter().map(|w| w.z).collect(),
            f.vertices.iter().map(|a| a.y).collect(),
            x,
        )
    }
}

impl fmt::Display for StructuredElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z={:?} y={:?} x={:?}", self.z, self.y, self.x)
    }
}

/// `G_Γ × C₂^I` as a [`FiniteGroup`] over canonical codes.
#[derive(Debug, Clone)]
pub struct StructuredGroup {
    params: Arc<Params>,
}

impl StructuredGroup {
    pub fn new(params: Params) -> Self {
        StructuredGroup {
            params: Arc::new(params),
        }
    }

    pub fn params(&self) -> &Arc<Params> {
        &self.params
    }

    pub fn element(&self, code: usize) -> StructuredElement {
        StructuredElement::decode(&self.params, code).expect("code in range")
    }

    pub fn vertex_code(&self, v: usize, g: DpElement) -> usize {
        StructuredElement::at_vertex(&self.params, v, g).encode()
    }

    pub fn edge_code(&self, r: usize, g: WElement) -> usize {
        StructuredElement::at_edge(&self.params, r, g).encode()
    }

    pub fn extra_code(&self, i: usize) -> usize {
        StructuredElement::at_extra(&self.params, i).encode()
    }

    /// Reads the `x`-array of an encoded element.
    pub fn xi_bits(&self, code: usize) -> Vec<u8> {
        let d = Digits::decode(&self.params, code);
        let xo = self.params.x_off();
        d.d[xo..xo + self.params.bit_count()].iter().map(|&b| b as u8).collect()
    }

    /// True when the `x`-array is zero, that is, the element has odd order.
    pub fn in_sylow_product(&self, code: usize) -> bool {
        let d = Digits::decode(&self.params, code);
        let xo = self.params.x_off();
        d.d[xo..xo + self.params.bit_count()].iter().all(|&b| b == 0)
    }

    pub fn vertex_projection(&self, v: usize) -> Hom {
        let images = (0..self.order()).map(|c| self.element(c).vertex_part(v).encode()).collect();
        Hom {
            images,
            target_order: 2 * self.params.p as usize,
        }
    }

    pub fn edge_projection(&self, r: usize) -> Hom {
        let images = (0..self.order()).map(|c| self.element(c).edge_part(r).encode()).collect();
        Hom {
            images,
            target_order: (4 * self.params.p * self.params.p * self.params.q) as usize,
        }
    }

    pub fn extra_projection(&self, i: usize) -> Hom {
        let w = self.params.vertices.len() + i;
        let images = (0..self.order()).map(|c| self.xi_bits(c)[w] as usize).collect();
        Hom { images, target_order: 2 }
    }
}

impl FiniteGroup for StructuredGroup {
    fn order(&self) -> usize {
        self.params.order as usize
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let p = &*self.params;
        Digits::decode(p, a).mul(&Digits::decode(p, b), p).encode(p)
    }

    fn inv(&self, a: usize) -> usize {
        let p = &*self.params;
        Digits::decode(p, a).inv(p).encode(p)
    }

    fn generators(&self) -> Vec<usize> {
        let p = &self.params;
        let mut g = Vec::new();
        for v in 0..p.vertices.len() {
            g.push(self.vertex_code(v, DpElement::gamma(p.p)));
            g.push(self.vertex_code(v, DpElement::beta(p.p)));
        }
        for r in 0..p.edges.len() {
            g.push(self.edge_code(r, WElement::delta(p.p, p.q)));
        }
        for i in 0..p.extra.len() {
            g.push(self.extra_code(i));
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{element_order, find_isomorphism};

    fn edge_params() -> Arc<Params> {
        Arc::new(Params::new(3, 5, &["a", "b"], &[("a", "b")], &[]).unwrap())
    }

    #[test]
    fn params_validation() {
        assert!(Params::new(3, 3, &["a"], &[], &[]).is_err());
        assert!(Params::new(2, 5, &["a"], &[], &[]).is_err());
        assert!(Params::new(9, 5, &["a"], &[], &[]).is_err());
        assert!(Params::new(3, 5, &["a"], &[("a", "a")], &[]).is_err());
        assert!(Params::new(3, 5, &["a", "b"], &[("a", "b"), ("b", "a")], &[]).is_err());
        assert!(Params::new(3, 5, &["a"], &[("a", "c")], &[]).is_err());
        assert!(Params::new(3, 5, &["a"], &[], &["a"]).is_err());
        let p = Params::new(3, 5, &["b", "a"], &[("b", "a")], &["i0"]).unwrap();
        assert_eq!(p.order(), 360);
        assert_eq!(p.edges(), &[(0, 1)]);
    }

    #[test]
    fn dp_relations() {
        let (g, b) = (DpElement::gamma(3), DpElement::beta(3));
        assert_eq!(b.mul(g).mul(b.inv()), g.inv());
        assert_eq!(g.mul(g).mul(g), DpElement::identity(3));
        for a in DpElement::all(5) {
            assert!(a.mul(a.inv()).is_identity());
            assert_eq!(DpElement::decode(5, a.encode()), a);
        }
    }

    #[test]
    fn w_matches_single_edge_group() {
        let params = edge_params();
        let g = StructuredGroup::new((*params).clone());
        for a in 0..180 {
            let w = WElement::decode(3, 5, a);
            assert_eq!(w.encode(), a);
            assert_eq!(g.element(a).edge_part(0), w);
        }
        let wt = w_group(3, 5);
        for a in (0..180).step_by(7) {
            for b in 0..180 {
                assert_eq!(wt.mul(a, b), g.mul(a, b));
            }
        }
    }

    #[test]
    fn injections_and_projections() {
        let params = edge_params();
        let gam = DpElement::gamma(3);
        let e = StructuredElement::inject_vertex(&params, "a", gam).unwrap();
        assert_eq!(e.project_edge("a", "b").unwrap(), WElement::new(5, 0, gam, DpElement::identity(3)));
        assert_eq!(e.mul(&e).unwrap().mul(&e).unwrap(), StructuredElement::identity(&params));
        let d = StructuredElement::inject_edge(&params, "b", "a", WElement::delta(3, 5)).unwrap();
        assert_eq!(d.order(), 5);
        assert!(d.xi().is_zero());
        let f = d.to_product_form();
        assert_eq!(f.edges[0], WElement::delta(3, 5));
        assert!(f.vertices.iter().all(|v| v.is_identity()));
        assert_eq!(StructuredElement::from_product_form(&params, &f).unwrap(), d);
        assert!(e.project_vertex("c").is_err());
    }

    #[test]
    fn mismatched_params_rejected() {
        let a = StructuredElement::identity(&edge_params());
        let other = Arc::new(Params::new(3, 7, &["a", "b"], &[("a", "b")], &[]).unwrap());
        assert!(a.mul(&StructuredElement::identity(&other)).is_err());
    }

    #[test]
    fn single_edge_group_is_w() {
        let g = StructuredGroup::new((*edge_params()).clone());
        assert!(find_isomorphism(&g, &w_group(3, 5)).is_some());
        let delta = g.edge_code(0, WElement::delta(3, 5));
        assert_eq!(element_order(&g, delta), 5);
    }
}
