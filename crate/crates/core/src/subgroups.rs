//! Normal subgroups, quotients, isomorphism tags, and the Sylow, Frattini
//! and fiber-product constructions, all by explicit enumeration.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{budget, Error, Result};
use crate::group::{
    canonical_generators, conjugate, element_order, element_orders, find_isomorphism, is_normal, is_subgroup,
    Closure, ElementSet, FiniteGroup, Hom, TableGroup, IDENTITY,
};
use crate::groups::{dp_group, w_group, StructuredGroup};

pub const DEFAULT_MAX_ORDER: usize = 10_000;
pub const DEFAULT_FRATTINI_GUARD: usize = 500;
/// Above this order only the order-specific tests are attempted.
pub const ISO_SEARCH_LIMIT: usize = 512;

/// A normal subgroup stored as its member set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalSubgroup {
    pub elements: ElementSet,
    pub order: usize,
    pub index: usize,
    /// Canonical generators: greedy over increasing codes.
    pub gens: Vec<usize>,
}

impl NormalSubgroup {
    fn from_closure<G: FiniteGroup + ?Sized>(g: &G, c: Closure) -> Self {
        let order = c.order();
        let gens = canonical_generators(g, &c.set);
        NormalSubgroup {
            elements: c.set,
            order,
            index: g.order() / order,
            gens,
        }
    }

    /// Checks that `set` is a normal subgroup of `g`.
    pub fn from_set<G: FiniteGroup + ?Sized>(g: &G, set: ElementSet) -> Result<Self> {
        if set.len() != g.order() || !is_subgroup(g, &set) || !is_normal(g, &set) {
            return Err(Error::Contract("not a normal subgroup".into()));
        }
        let order = set.count_ones(..);
        let gens = canonical_generators(g, &set);
        Ok(NormalSubgroup {
            elements: set,
            order,
            index: g.order() / order,
            gens,
        })
    }

    pub fn trivial<G: FiniteGroup + ?Sized>(g: &G) -> Self {
        Self::from_closure(g, Closure::trivial(g.order()))
    }

    pub fn whole<G: FiniteGroup + ?Sized>(g: &G) -> Self {
        let mut set = ElementSet::with_capacity(g.order());
        set.insert_range(..);
        NormalSubgroup {
            elements: set,
            order: g.order(),
            index: 1,
            gens: g.generators(),
        }
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.contains(a)
    }

    pub fn is_subset(&self, other: &NormalSubgroup) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.ones()
    }

    /// `index=<k> order=<n> gens=<enc,...>`
    pub fn golden_line(&self) -> String {
        let gens: Vec<String> = self.gens.iter().map(|g| alloc::format!("{g}")).collect();
        alloc::format!("index={} order={} gens={}", self.index, self.order, gens.join(","))
    }

    /// Sort key: index first, then the member list lexicographically.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.index
            .cmp(&other.index)
            .then_with(|| self.elements.ones().cmp(other.elements.ones()))
    }
}

pub fn normal_closure<G: FiniteGroup + ?Sized>(g: &G, gens: &[usize], guard: usize) -> Result<NormalSubgroup> {
    if g.order() > guard {
        return Err(budget("normal closure", g.order(), guard));
    }
    let parent_gens = g.generators();
    let mut c = Closure::trivial(g.order());
    for &s in gens {
        c.extend(g, s);
    }
    // Conjugating each generator by each parent generator suffices.
    let mut i = 0;
    while i < c.gens.len() {
        let t = c.gens[i];
        for &h in &parent_gens {
            let u = conjugate(g, t, h);
            c.extend(g, u);
        }
        i += 1;
    }
    Ok(NormalSubgroup::from_closure(g, c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combine {
    Product,
    Intersection,
}

pub fn combine<G: FiniteGroup + ?Sized>(g: &G, n: &NormalSubgroup, m: &NormalSubgroup, mode: Combine) -> NormalSubgroup {
    match mode {
        Combine::Product => product(g, n, m),
        Combine::Intersection => intersection(g, n, m),
    }
}

pub fn product<G: FiniteGroup + ?Sized>(g: &G, n: &NormalSubgroup, m: &NormalSubgroup) -> NormalSubgroup {
    if n.is_subset(m) {
        return m.clone();
    }
    if m.is_subset(n) {
        return n.clone();
    }
    let mut c = Closure::generated(g, &n.gens);
    for &s in &m.gens {
        c.extend(g, s);
    }
    NormalSubgroup::from_closure(g, c)
}

pub fn intersection<G: FiniteGroup + ?Sized>(g: &G, n: &NormalSubgroup, m: &NormalSubgroup) -> NormalSubgroup {
    let mut set = n.elements.clone();
    set.intersect_with(&m.elements);
    let order = set.count_ones(..);
    let gens = canonical_generators(g, &set);
    NormalSubgroup {
        elements: set,
        order,
        index: g.order() / order,
        gens,
    }
}

/// Every element generating the same cyclic subgroup as some conjugate of `a`.
fn rational_class<G: FiniteGroup + ?Sized>(g: &G, a: usize, parent_gens: &[usize]) -> Vec<usize> {
    let mut seen = ElementSet::with_capacity(g.order());
    let mut class = vec![a];
    seen.insert(a);
    let mut i = 0;
    while i < class.len() {
        for &h in parent_gens {
            let c = conjugate(g, class[i], h);
            if !seen.put(c) {
                class.push(c);
            }
        }
        i += 1;
    }
    let n = element_order(g, a);
    let mut out = Vec::new();
    for &c in &class {
        let mut x = c;
        for k in 1..=n {
            if gcd(k, n) == 1 {
                out.push(x);
            }
            x = g.mul(x, c);
        }
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All normal subgroups: normal closures of single elements, closed under
/// products, in canonical order.
pub fn enumerate_normal<G: FiniteGroup + ?Sized>(g: &G, guard: usize) -> Result<Vec<NormalSubgroup>> {
    if g.order() > guard {
        return Err(budget("normal subgroup enumeration", g.order(), guard));
    }
    let parent_gens = g.generators();
    let mut covered = ElementSet::with_capacity(g.order());
    covered.insert(IDENTITY);
    let mut atoms: Vec<NormalSubgroup> = Vec::new();
    let mut seen: BTreeSet<ElementSet> = BTreeSet::new();
    for a in 0..g.order() {
        if covered.contains(a) {
            continue;
        }
        for c in rational_class(g, a, &parent_gens) {
            covered.insert(c);
        }
        let n = normal_closure(g, &[a], guard)?;
        if seen.insert(n.elements.clone()) {
            atoms.push(n);
        }
    }
    let trivial = NormalSubgroup::trivial(g);
    seen.insert(trivial.elements.clone());
    let mut all = vec![trivial];
    all.extend(atoms.iter().cloned());
    let mut i = 1;
    while i < all.len() {
        for a in &atoms {
            let p = product(g, &all[i], a);
            if seen.insert(p.elements.clone()) {
                all.push(p);
            }
        }
        i += 1;
    }
    all.sort_by(|a, b| a.canonical_cmp(b));
    Ok(all)
}

/// The cosets of a normal subgroup: representatives are the minimal codes,
/// listed in increasing order, so the identity coset is coset `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetMap {
    pub reps: Vec<usize>,
    pub projection: Vec<u32>,
}

impl CosetMap {
    pub fn new<G: FiniteGroup + ?Sized>(g: &G, n: &NormalSubgroup) -> Self {
        let members: Vec<usize> = n.members().collect();
        let mut projection = vec![u32::MAX; g.order()];
        let mut reps = Vec::with_capacity(n.index);
        for a in 0..g.order() {
            if projection[a] != u32::MAX {
                continue;
            }
            let k = reps.len() as u32;
            reps.push(a);
            for &h in &members {
                projection[g.mul(a, h)] = k;
            }
        }
        CosetMap { reps, projection }
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn coset_of(&self, a: usize) -> usize {
        self.projection[a] as usize
    }

    pub fn as_hom(&self) -> Hom {
        Hom {
            images: self.projection.iter().map(|&k| k as usize).collect(),
            target_order: self.reps.len(),
        }
    }

    /// The induced map `G/N → G/M` for `N ⊆ M`.
    pub fn induced(&self, to: &CosetMap) -> Hom {
        Hom {
            images: self.reps.iter().map(|&r| to.coset_of(r)).collect(),
            target_order: to.index(),
        }
    }
}

/// `G/N` computed on the fly from a coset map.
#[derive(Debug, Clone, Copy)]
pub struct QuotientView<'a, G: ?Sized> {
    pub parent: &'a G,
    pub cosets: &'a CosetMap,
}

impl<G: FiniteGroup + ?Sized> FiniteGroup for QuotientView<'_, G> {
    fn order(&self) -> usize {
        self.cosets.index()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.cosets
            .coset_of(self.parent.mul(self.cosets.reps[a], self.cosets.reps[b]))
    }
    fn inv(&self, a: usize) -> usize {
        self.cosets.coset_of(self.parent.inv(self.cosets.reps[a]))
    }
    fn generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = self
            .parent
            .generators()
            .into_iter()
            .map(|s| self.cosets.coset_of(s))
            .filter(|&k| k != IDENTITY)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        gens
    }
}

/// `G/N` with its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGroup {
    pub cosets: CosetMap,
    pub table: TableGroup,
}

impl QuotientGroup {
    pub fn new<G: FiniteGroup + ?Sized>(g: &G, n: &NormalSubgroup) -> Self {
        let cosets = CosetMap::new(g, n);
        let table = TableGroup::from_group(&QuotientView {
            parent: g,
            cosets: &cosets,
        });
        QuotientGroup { cosets, table }
    }

    pub fn projection(&self) -> Hom {
        self.cosets.as_hom()
    }
}

impl FiniteGroup for QuotientGroup {
    fn order(&self) -> usize {
        self.table.order()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table.mul(a, b)
    }
    fn inv(&self, a: usize) -> usize {
        self.table.inv(a)
    }
    fn generators(&self) -> Vec<usize> {
        self.table.generators()
    }
}

pub fn quotient<G: FiniteGroup + ?Sized>(g: &G, n: &NormalSubgroup) -> QuotientGroup {
    QuotientGroup::new(g, n)
}

/// The named groups a class can be recognised as.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IsoTag {
    Trivial,
    C2,
    /// Elementary abelian of order `2^k`, `k ≥ 2`.
    C2k(u32),
    Cp,
    Cq,
    Dp,
    Dq,
    DpXDp,
    W,
    Other,
}

impl IsoTag {
    pub fn name(self) -> String {
        match self {
            IsoTag::Trivial => "Trivial".into(),
            IsoTag::C2 => "C2".into(),
            IsoTag::C2k(k) => alloc::format!("C2^{k}"),
            IsoTag::Cp => "Cp".into(),
            IsoTag::Cq => "Cq".into(),
            IsoTag::Dp => "Dp".into(),
            IsoTag::Dq => "Dq".into(),
            IsoTag::DpXDp => "DpxDp".into(),
            IsoTag::W => "W".into(),
            IsoTag::Other => "Other".into(),
        }
    }

    /// Parses the names accepted by the formula language and `name`.
    pub fn parse(s: &str) -> Option<IsoTag> {
        Some(match s {
            "Trivial" | "1" => IsoTag::Trivial,
            "C2" => IsoTag::C2,
            "Cp" => IsoTag::Cp,
            "Cq" => IsoTag::Cq,
            "Dp" => IsoTag::Dp,
            "Dq" => IsoTag::Dq,
            "DpxDp" | "DpXDp" => IsoTag::DpXDp,
            "W" => IsoTag::W,
            "Other" => IsoTag::Other,
            _ => {
                let k = s.strip_prefix("C2^")?.parse().ok()?;
                if k < 2 {
                    return None;
                }
                IsoTag::C2k(k)
            }
        })
    }
}

impl fmt::Display for IsoTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Recognises `g` among the named groups for primes `(p, q)`.
pub fn iso_tag<G: FiniteGroup + ?Sized>(g: &G, p: u32, q: u32) -> IsoTag {
    let n = g.order();
    let (p_, q_) = (p as usize, q as usize);
    let search = |target: &TableGroup| n <= ISO_SEARCH_LIMIT.max(target.order()) && find_isomorphism(g, target).is_some();
    if n == 1 {
        return IsoTag::Trivial;
    }
    if n == 2 {
        return IsoTag::C2;
    }
    if n == p_ {
        return IsoTag::Cp;
    }
    if n == q_ {
        return IsoTag::Cq;
    }
    if n.is_power_of_two() {
        let gens = g.generators();
        let elementary = gens.iter().all(|&a| g.mul(a, a) == IDENTITY)
            && gens.iter().all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
        return if elementary {
            IsoTag::C2k(n.trailing_zeros())
        } else {
            IsoTag::Other
        };
    }
    if n == 2 * p_ && search(&dp_group(p)) {
        return IsoTag::Dp;
    }
    if n == 2 * q_ && search(&dp_group(q)) {
        return IsoTag::Dq;
    }
    if n == 4 * p_ * p_ {
        let d = dp_group(p);
        if search(&TableGroup::direct_product(&d, &d)) {
            return IsoTag::DpXDp;
        }
    }
    if n == 4 * p_ * p_ * q_ && search(&w_group(p, q)) {
        return IsoTag::W;
    }
    IsoTag::Other
}

/// `S_pq` of a structured group: the elements with zero `x`-part.
pub fn sylow_product_structured(g: &StructuredGroup) -> NormalSubgroup {
    let mut set = ElementSet::with_capacity(g.order());
    for a in 0..g.order() {
        if g.in_sylow_product(a) {
            set.insert(a);
        }
    }
    let order = set.count_ones(..);
    let gens = canonical_generators(g, &set);
    NormalSubgroup {
        elements: set,
        order,
        index: g.order() / order,
        gens,
    }
}

/// The odd-order elements, which form the image of `S_pq` in any quotient of
/// a structured group. Errors if they do not form a normal subgroup.
pub fn sylow_product<G: FiniteGroup + ?Sized>(g: &G) -> Result<NormalSubgroup> {
    let orders = element_orders(g);
    let set: ElementSet = (0..g.order()).filter(|&a| orders[a] % 2 == 1).collect();
    let mut full = ElementSet::with_capacity(g.order());
    full.union_with(&set);
    NormalSubgroup::from_set(g, full)
}

/// Every subgroup of `g`, as joins of cyclic subgroups.
pub fn subgroup_lattice<G: FiniteGroup + ?Sized>(g: &G, guard: usize) -> Result<Vec<ElementSet>> {
    if g.order() > guard {
        return Err(budget("subgroup lattice", g.order(), guard));
    }
    let mut seen: BTreeSet<ElementSet> = BTreeSet::new();
    let mut cyclic: Vec<(usize, ElementSet)> = Vec::new();
    for a in 0..g.order() {
        let c = Closure::generated(g, &[a]);
        if seen.insert(c.set.clone()) {
            cyclic.push((a, c.set));
        }
    }
    let mut all: Vec<Closure> = cyclic
        .iter()
        .map(|(a, _)| Closure::generated(g, &[*a]))
        .collect();
    let mut i = 0;
    while i < all.len() {
        for (a, cset) in &cyclic {
            if cset.is_subset(&all[i].set) {
                continue;
            }
            let mut j = all[i].clone();
            j.extend(g, *a);
            if seen.insert(j.set.clone()) {
                all.push(j);
            }
        }
        i += 1;
    }
    let mut out: Vec<ElementSet> = all.into_iter().map(|c| c.set).collect();
    out.sort_by(|a, b| a.count_ones(..).cmp(&b.count_ones(..)).then_with(|| a.ones().cmp(b.ones())));
    Ok(out)
}

fn maximal_subgroups(lattice: &[ElementSet], order: usize) -> Vec<&ElementSet> {
    let proper: Vec<&ElementSet> = lattice.iter().filter(|s| s.count_ones(..) < order).collect();
    proper
        .iter()
        .filter(|s| !proper.iter().any(|t| t.count_ones(..) > s.count_ones(..) && s.is_subset(t)))
        .copied()
        .collect()
}

/// The Frattini subgroup: the intersection of all maximal subgroups.
pub fn frattini<G: FiniteGroup + ?Sized>(g: &G, guard: usize) -> Result<NormalSubgroup> {
    let lattice = subgroup_lattice(g, guard)?;
    Ok(frattini_from_lattice(g, &lattice))
}

fn frattini_from_lattice<G: FiniteGroup + ?Sized>(g: &G, lattice: &[ElementSet]) -> NormalSubgroup {
    let mut phi = ElementSet::with_capacity(g.order());
    phi.insert_range(..);
    for m in maximal_subgroups(lattice, g.order()) {
        phi.intersect_with(m);
    }
    NormalSubgroup::from_set(g, phi).expect("Frattini subgroup is normal")
}

/// Whether a surjection `f: src → Q` is a Frattini cover. Both the kernel
/// route and the no-proper-supplement route are computed and must agree.
pub fn is_frattini_cover<G: FiniteGroup + ?Sized>(src: &G, f: &Hom, guard: usize) -> Result<bool> {
    if !f.is_surjective() {
        return Err(Error::Contract("map is not surjective".into()));
    }
    let lattice = subgroup_lattice(src, guard)?;
    let phi = frattini_from_lattice(src, &lattice);
    let by_kernel = f.kernel().is_subset(&phi.elements);
    let by_supplement = !lattice
        .iter()
        .filter(|s| s.count_ones(..) < src.order())
        .any(|s| f.image_of(s).is_full());
    if by_kernel != by_supplement {
        return Err(Error::Contract("Frattini cover tests disagree".into()));
    }
    Ok(by_kernel)
}

/// `Q₁ ×_{Q₀} Q₂`: pairs agreeing in `Q₀`, listed lexicographically.
pub fn fiber_product<A, B>(a: &A, f: &Hom, b: &B, g: &Hom) -> Result<TableGroup>
where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    if !f.is_surjective() || !g.is_surjective() || f.target_order != g.target_order {
        return Err(Error::Contract("fiber product needs two surjections onto one group".into()));
    }
    let mut pairs = Vec::new();
    let mut index = vec![usize::MAX; a.order() * b.order()];
    for x in 0..a.order() {
        for y in 0..b.order() {
            if f.apply(x) == g.apply(y) {
                index[x * b.order() + y] = pairs.len();
                pairs.push((x, y));
            }
        }
    }
    TableGroup::from_fn(pairs.len(), |i, j| {
        let ((x1, y1), (x2, y2)) = (pairs[i], pairs[j]);
        index[a.mul(x1, x2) * b.order() + b.mul(y1, y2)]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Params;

    fn structured(v: &[&str], e: &[(&str, &str)], i: &[&str]) -> StructuredGroup {
        StructuredGroup::new(Params::new(3, 5, v, e, i).unwrap())
    }

    #[test]
    fn normal_subgroups_of_small_groups() {
        let d3 = dp_group(3);
        let ns = enumerate_normal(&d3, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(ns.iter().map(|n| n.order).collect::<Vec<_>>(), vec![6, 3, 1]);
        assert_eq!(enumerate_normal(&TableGroup::elementary_abelian(2), 100).unwrap().len(), 5);
        assert!(matches!(enumerate_normal(&d3, 5), Err(Error::Budget { .. })));
    }

    #[test]
    fn w_has_index_ten_normal_subgroup_with_dihedral_quotient() {
        let w = structured(&["a", "b"], &[("a", "b")], &[]);
        let ns = enumerate_normal(&w, DEFAULT_MAX_ORDER).unwrap();
        let m = ns
            .iter()
            .find(|n| {
                n.members().all(|c| {
                    let e = w.element(c).edge_part(0);
                    e.z == 0 && e.b.tau() == e.c.tau()
                }) && n.index == 10
            })
            .expect("M present");
        let q = quotient(&w, m);
        assert_eq!(iso_tag(&q, 3, 5), IsoTag::Dq);
        assert_eq!(iso_tag(&w, 3, 5), IsoTag::W);
    }

    #[test]
    fn closures_and_sylow() {
        let w = structured(&["a", "b"], &[("a", "b")], &[]);
        let delta = w.edge_code(0, crate::groups::WElement::delta(3, 5));
        assert_eq!(normal_closure(&w, &[delta], 1000).unwrap().order, 5);
        assert_eq!(normal_closure(&w, &[], 1000).unwrap().index, 180);
        let s = sylow_product_structured(&w);
        assert_eq!(s.order, 45);
        assert_eq!(sylow_product(&w).unwrap(), s);
        assert_eq!(iso_tag(&quotient(&w, &s), 3, 5), IsoTag::C2k(2));
    }

    #[test]
    fn frattini_examples() {
        let c4 = TableGroup::cyclic(4);
        assert_eq!(frattini(&c4, 500).unwrap().order, 2);
        assert_eq!(frattini(&dp_group(3), 500).unwrap().order, 1);
        let red = Hom::from_generator_images(&c4, &TableGroup::cyclic(2), &[1], &[1]).unwrap();
        assert!(is_frattini_cover(&c4, &red, 500).unwrap());
        let v4 = TableGroup::elementary_abelian(2);
        let proj = Hom {
            images: vec![0, 1, 0, 1],
            target_order: 2,
        };
        assert!(!is_frattini_cover(&v4, &proj, 500).unwrap());
    }

    #[test]
    fn fiber_product_of_dihedral_signs() {
        let d3 = dp_group(3);
        let tau = Hom {
            images: (0..6).map(|c| c % 2).collect(),
            target_order: 2,
        };
        assert_eq!(fiber_product(&d3, &tau, &d3, &tau).unwrap().order(), 18);
    }
}
