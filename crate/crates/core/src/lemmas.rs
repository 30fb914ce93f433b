//! Exhaustive verifiers for the finite lemmas about structured groups and
//! their systems. Each verifier checks one statement on one instance, counts
//! the cases it looked at and keeps the first failing case as a replayable
//! description.
//!
//! The verifiers use the generic machinery (subgroup enumeration, quotients,
//! isomorphism search, the system relations) as their oracle, not the
//! coordinate shortcuts they are meant to validate.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use core::time::Duration;

use crate::automorphism::{
    assemble, coordinate_change, coordinate_maps_of, dp_automorphisms, extend_w_automorphism, factor,
    induced_graph_map, reconstruct_bottom, CoordinateMaps, SystemAutomorphism,
};
use crate::bounding::check_bounding;
use crate::codec::{decode, decode_labeled, decode_structured, encode, isomorphic, Graph};
use crate::error::{budget, Error, Result};
use crate::gf2;
use crate::group::{
    automorphisms, conjugate, element_orders, find_isomorphism, pow, ElementSet, FiniteGroup, Hom, TableGroup,
};
use crate::groups::{dp_group, dq_group, w_group, DpElement, ProductForm, StructuredElement, StructuredGroup, WElement};
use crate::logic::{builtin, solution_set};
use crate::subgroups::{
    enumerate_normal, fiber_product, frattini, intersection, product, quotient, subgroup_lattice, sylow_product,
    NormalSubgroup, DEFAULT_FRATTINI_GUARD, DEFAULT_MAX_ORDER,
};
use crate::system::{Subsystem, System};
use crate::width::{next_combination, Width, WidthAlgebra};

macro_rules! lemma_ids {
    ($($variant:ident => $name:literal,)*) => {
        /// The verifiable lemmas.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum LemmaId {
            $($variant,)*
        }

        impl LemmaId {
            pub const ALL: &'static [LemmaId] = &[$(LemmaId::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(LemmaId::$variant => $name,)*
                }
            }
        }
    };
}

lemma_ids! {
    VertexRotations => "easy-1",
    VertexFactor => "easy-2",
    EdgeRotations => "easy-3",
    EdgeFree => "easy-4",
    StillProper => "still-proper",
    NoUnexpected => "no-unexpected",
    FrattiniTrivial => "frattini-trivial",
    NormalSylow => "normal-sylow",
    SylowIntersect => "sylow-intersect",
    ModularLaw => "modular-law",
    FiberIso => "fiber-iso",
    GraphRecovery => "graph-recovery",
    Dictionary => "dictionary",
    Exchange => "exchange",
    Parity => "parity",
    C2Generation => "c2-generation",
    GclIdempotent => "gcl-idempotent",
    WidthDefinability => "width-definability",
    Bounding => "bounding",
    ExtendAuts => "extend-auts",
    Factoring => "factoring",
    UniqueAut => "unique-aut",
    Lifting => "lifting",
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Label(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabConfig {
    pub p: u32,
    pub q: u32,
    pub max_order: usize,
    pub frattini_guard: usize,
}

impl Default for LabConfig {
    fn default() -> Self {
        LabConfig {
            p: 3,
            q: 5,
            max_order: DEFAULT_MAX_ORDER,
            frattini_guard: DEFAULT_FRATTINI_GUARD,
        }
    }
}

/// A graph together with the number of extra `C₂` factors.
///
/// Text form: comma-separated tokens, `u-v` for an edge and `v` for a
/// vertex, optionally followed by `+K` for `K` extra factors. The empty graph
/// is `empty` (or just `+K`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub extra: usize,
}

impl Instance {
    pub fn new(graph: Graph, extra: usize) -> Self {
        Instance { graph, extra }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.into() };
        let text_trim = text.trim_end();
        let (body, extra) = match text_trim.rfind('+') {
            Some(i) => {
                let k = text_trim[i + 1..]
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| err(i + 1, "expected a count after `+`"))?;
                (&text_trim[..i], k)
            }
            None => (text_trim, 0),
        };
        let mut graph = Graph::default();
        let mut offset = 0;
        if !(body.trim().is_empty() || body.trim() == "empty") {
            for tok in body.split(',') {
                let lead = tok.len() - tok.trim_start().len();
                let t = tok.trim();
                let pos = offset + lead;
                if t.is_empty() {
                    return Err(err(pos, "empty token"));
                }
                match t.split_once('-') {
                    Some((a, b)) => {
                        let (a, b) = (a.trim(), b.trim());
                        if a.is_empty() || b.is_empty() {
                            return Err(err(pos, "edge needs two endpoints"));
                        }
                        for v in [a, b] {
                            if !graph.has_vertex(v) {
                                graph.add_vertex(v).map_err(|e| err(pos, &e.to_string()))?;
                            }
                        }
                        graph.add_edge(a, b).map_err(|e| err(pos, &e.to_string()))?;
                    }
                    None => {
                        if !graph.has_vertex(t) {
                            graph.add_vertex(t).map_err(|e| err(pos, &e.to_string()))?;
                        }
                    }
                }
                offset += tok.len() + 1;
            }
        }
        Ok(Instance { graph, extra })
    }

    fn group(&self, cfg: &LabConfig) -> Result<StructuredGroup> {
        encode(&self.graph, self.extra, cfg.p, cfg.q)
    }

    fn require_plain(&self, id: LemmaId) -> Result<()> {
        if self.extra > 0 {
            return Err(Error::Contract(format!("{id} is stated without extra C2 factors")));
        }
        Ok(())
    }

    fn require_edgeless(&self, id: LemmaId) -> Result<()> {
        if self.graph.edge_count() > 0 {
            return Err(Error::Contract(format!("{id} is stated for edgeless graphs")));
        }
        Ok(())
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tokens: Vec<String> = self.graph.edges().map(|(a, b)| format!("{a}-{b}")).collect();
        let covered: BTreeSet<&str> = self.graph.edges().flat_map(|(a, b)| [a, b]).collect();
        tokens.extend(
            self.graph
                .vertices()
                .iter()
                .filter(|v| !covered.contains(v.as_str()))
                .cloned(),
        );
        if tokens.is_empty() && self.extra == 0 {
            return f.write_str("empty");
        }
        f.write_str(&tokens.join(","))?;
        if self.extra > 0 {
            write!(f, "+{}", self.extra)?;
        }
        Ok(())
    }
}

impl FromStr for Instance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Instance::parse(s)
    }
}

/// Parses `;`-separated instances.
pub fn parse_instances(text: &str) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        out.push(Instance::parse(part).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
            other => other,
        })?);
        offset += part.len() + 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Small,
    Full,
}

/// The instances a lemma is checked on by default.
pub fn default_instances(id: LemmaId, scale: Scale) -> Vec<Instance> {
    use LemmaId::*;
    let (small, more): (&[&str], &[&str]) = match id {
        VertexRotations | VertexFactor => (&["a", "a,b", "a,b+1"], &["a,b,c"]),
        EdgeRotations => (&["a-b", "a-b+1"], &["a-b,b-c"]),
        EdgeFree => (&["a-b", "a-b+1"], &["a-b+2"]),
        StillProper => (&["a", "a,b", "a-b"], &["a-b,b-c"]),
        NoUnexpected => (&["a", "a,b", "a,b+1"], &["a,b+2"]),
        FrattiniTrivial => (&["a", "a,b", "a-b"], &[]),
        NormalSylow | SylowIntersect => (&["a,b", "a-b"], &["a-b+1"]),
        ModularLaw => (&["a", "a-b"], &["a,b", "a-b+1"]),
        FiberIso => (&["a", "a-b"], &["a,b"]),
        GraphRecovery => (&["empty", "a", "a,b", "a-b"], &["a,b,c", "a-b,c", "a-b,b-c"]),
        Dictionary => (&["a", "a,b", "a-b", "a-b+1"], &["a,b+1", "a-b,b-c"]),
        Exchange | C2Generation => (&["a", "a+1", "a,b", "a,b+1", "a-b", "a-b+1"], &["empty", "+1", "a,b,c"]),
        Parity => (&["a,b", "a-b"], &["a,b,c", "a-b,b-c"]),
        GclIdempotent => (&["a", "a,b", "a-b", "a-b+1"], &["a-b,b-c"]),
        WidthDefinability => (&["a", "a-b"], &["empty", "+1", "a+1", "a,b", "a,b+1", "a-b+1"]),
        Bounding => (&["a-b", "a-b+1"], &["a-b,b-c"]),
        ExtendAuts => (&["a-b"], &[]),
        Factoring => (&["a", "a,b"], &["a-b"]),
        UniqueAut => (&["a", "a,b", "a-b"], &[]),
        Lifting => (&["a,b", "a-b"], &["a-b,b-c"]),
    };
    let extra: &[&str] = match scale {
        Scale::Small => &[],
        Scale::Full => more,
    };
    small
        .iter()
        .chain(extra)
        .map(|s| Instance::parse(s).expect("built-in instance"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma_id: LemmaId,
    pub instance: Instance,
    pub status: Status,
    pub counterexample: Option<String>,
    pub checked_count: u64,
    /// Left at zero here; callers with a clock fill it in.
    pub elapsed: Duration,
}

#[derive(Default)]
struct Tally {
    checked: u64,
    counterexample: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }
}

/// Runs one verifier on one instance. Errors are reserved for bad input
/// (an instance outside the lemma's hypotheses, exceeded budgets); a false
/// statement is reported as [`Status::Fail`] with a counterexample.
pub fn verify(id: LemmaId, inst: &Instance, cfg: &LabConfig) -> Result<LemmaReport> {
    use LemmaId::*;
    let mut t = Tally::default();
    match id {
        VertexRotations => vertex_rotations(inst, cfg, &mut t, false)?,
        VertexFactor => vertex_rotations(inst, cfg, &mut t, true)?,
        EdgeRotations => edge_rotations(inst, cfg, &mut t)?,
        EdgeFree => edge_free(inst, cfg, &mut t)?,
        StillProper => still_proper(inst, cfg, &mut t)?,
        NoUnexpected => no_unexpected(inst, cfg, &mut t)?,
        FrattiniTrivial => frattini_trivial(inst, cfg, &mut t)?,
        NormalSylow => normal_sylow(inst, cfg, &mut t)?,
        SylowIntersect => sylow_intersect(inst, cfg, &mut t)?,
        ModularLaw => modular_law(inst, cfg, &mut t)?,
        FiberIso => fiber_iso(inst, cfg, &mut t)?,
        GraphRecovery => graph_recovery(inst, cfg, &mut t)?,
        Dictionary => dictionary(inst, cfg, &mut t)?,
        Exchange => exchange(inst, cfg, &mut t)?,
        Parity => parity(inst, cfg, &mut t)?,
        C2Generation => c2_generation(inst, cfg, &mut t)?,
        GclIdempotent => gcl_idempotent(inst, cfg, &mut t)?,
        WidthDefinability => width_definability(inst, cfg, &mut t)?,
        Bounding => bounding(inst, cfg, &mut t)?,
        ExtendAuts => extend_auts(cfg, &mut t),
        Factoring => factoring(inst, cfg, &mut t)?,
        UniqueAut => unique_aut(inst, cfg, &mut t)?,
        Lifting => lifting(inst, cfg, &mut t)?,
    }
    Ok(LemmaReport {
        lemma_id: id,
        instance: inst.clone(),
        status: if t.counterexample.is_none() { Status::Pass } else { Status::Fail },
        counterexample: t.counterexample,
        checked_count: t.checked,
        elapsed: Duration::ZERO,
    })
}

fn normals(g: &StructuredGroup, cfg: &LabConfig) -> Result<Vec<NormalSubgroup>> {
    enumerate_normal(g, cfg.max_order)
}

fn system(inst: &Instance, cfg: &LabConfig) -> Result<System<StructuredGroup>> {
    let g = inst.group(cfg)?;
    let ns = normals(&g, cfg)?;
    System::build(g, cfg.p, cfg.q, ns)
}

fn vertex_label(g: &StructuredGroup, v: usize) -> &str {
    &g.params().vertices()[v]
}

fn edge_name(g: &StructuredGroup, r: usize) -> String {
    let (a, b) = g.params().edge_label(r);
    format!("{a}-{b}")
}

fn class_meet<G: FiniteGroup>(sys: &System<G>, s: usize, t: usize) -> Result<usize> {
    sys.meet_class(s, t).ok_or_else(|| Error::Closure("meet of two classes".into()))
}

fn class_join<G: FiniteGroup>(sys: &System<G>, s: usize, t: usize) -> Result<usize> {
    sys.join_class(s, t).ok_or_else(|| Error::Closure("join of two classes".into()))
}

/// All combinations of `k` indices out of `n`, in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        out.push(pick.clone());
        if k == 0 || !next_combination(&mut pick, n) {
            return out;
        }
    }
}

/// `π_v(N) ⊇ C_p` (resp. `π_v(N) = D_p`) forces `(C_p)_v ⊆ N`.
fn vertex_rotations(inst: &Instance, cfg: &LabConfig, t: &mut Tally, full_image: bool) -> Result<()> {
    inst.require_edgeless(if full_image { LemmaId::VertexFactor } else { LemmaId::VertexRotations })?;
    let g = inst.group(cfg)?;
    let gamma = DpElement::gamma(cfg.p);
    let projections: Vec<Hom> = (0..g.params().vertices().len()).map(|v| g.vertex_projection(v)).collect();
    for n in normals(&g, cfg)? {
        for (v, proj) in projections.iter().enumerate() {
            let img = proj.image_of(&n.elements);
            let hyp = if full_image {
                img.count_ones(..) == 2 * cfg.p as usize
            } else {
                img.contains(gamma.encode())
            };
            if hyp {
                t.check(n.contains(g.vertex_code(v, gamma)), || {
                    format!("N = [{}], vertex {}", n.golden_line(), vertex_label(&g, v))
                });
            }
        }
    }
    Ok(())
}

/// `π_r(N) ⊇ C_q` forces `(C_q)_r ⊆ N`.
fn edge_rotations(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    let g = inst.group(cfg)?;
    let delta = WElement::delta(cfg.p, cfg.q);
    let projections: Vec<Hom> = (0..g.params().edges().len()).map(|r| g.edge_projection(r)).collect();
    for n in normals(&g, cfg)? {
        for (r, proj) in projections.iter().enumerate() {
            if proj.image_of(&n.elements).contains(delta.encode()) {
                t.check(n.contains(g.edge_code(r, delta)), || {
                    format!("N = [{}], edge {}", n.golden_line(), edge_name(&g, r))
                });
            }
        }
    }
    Ok(())
}

/// `N ∩ C_q^R = 1` forces every member of `N` to have trivial `C_q` parts
/// and equal parities at the two ends of every edge.
fn edge_free(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    if inst.extra > 2 {
        return Err(Error::Contract("easy-4 is checked with at most two extra factors".into()));
    }
    let g = inst.group(cfg)?;
    let params = g.params().clone();
    for n in normals(&g, cfg)? {
        let members: Vec<StructuredElement> = n.members().map(|c| g.element(c)).collect();
        let meets_cq = members
            .iter()
            .any(|e| !e.is_identity() && e.y.iter().all(|&y| y == 0) && e.x.iter().all(|&x| x == 0));
        if meets_cq {
            continue;
        }
        for (r, &(u, v)) in params.edges().iter().enumerate() {
            let bad = members
                .iter()
                .find(|e| e.edge_part(r).z != 0 || e.vertex_part(u).tau() != e.vertex_part(v).tau());
            t.check(bad.is_none(), || {
                format!(
                    "N = [{}], edge {}, member {}",
                    n.golden_line(),
                    edge_name(&g, r),
                    bad.map(|e| e.encode()).unwrap_or_default()
                )
            });
        }
    }
    Ok(())
}

/// A proper normal subgroup stays proper after multiplying by the product
/// of the odd Sylow subgroups.
fn still_proper(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    inst.require_plain(LemmaId::StillProper)?;
    let g = inst.group(cfg)?;
    let s = sylow_product(&g)?;
    for n in normals(&g, cfg)?.iter().filter(|n| n.index > 1) {
        let ns = product(&g, n, &s);
        t.check(ns.index > 1, || format!("N = [{}]", n.golden_line()));
    }
    Ok(())
}

/// Every quotient of `D_p^V × C₂^I` isomorphic to `D_p^k` is the quotient
/// by the intersection of `k` vertex kernels.
fn no_unexpected(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    inst.require_edgeless(LemmaId::NoUnexpected)?;
    let g = inst.group(cfg)?;
    let nv = g.params().vertices().len();
    let kernels: Vec<ElementSet> = (0..nv).map(|v| g.vertex_projection(v).kernel()).collect();
    let ns = normals(&g, cfg)?;
    let dp = dp_group(cfg.p);
    let mut target = dp.clone();
    for k in 1..=nv {
        if k > 1 {
            target = TableGroup::direct_product(&target, &dp);
        }
        for n in ns.iter().filter(|n| n.index == target.order()) {
            let qg = quotient(&g, n);
            if find_isomorphism(&qg, &target).is_none() {
                continue;
            }
            let found = combinations(nv, k).into_iter().any(|pick| {
                let mut meet = kernels[pick[0]].clone();
                for &v in &pick[1..] {
                    meet.intersect_with(&kernels[v]);
                }
                meet == n.elements
            });
            t.check(found, || format!("N = [{}] with quotient D_p^{k}", n.golden_line()));
        }
    }
    Ok(())
}

fn frattini_trivial(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    inst.require_plain(LemmaId::FrattiniTrivial)?;
    let g = inst.group(cfg)?;
    let maximal_count = subgroup_lattice(&g, cfg.frattini_guard)?.len() as u64;
    let phi = frattini(&g, cfg.frattini_guard)?;
    t.check(phi.order == 1, || format!("Frattini subgroup [{}]", phi.golden_line()));
    t.checked += maximal_count;
    Ok(())
}

/// The normal Sylow subgroups, found as the primes whose power-order
/// elements form a normal subgroup.
fn normal_sylows(g: &StructuredGroup, cfg: &LabConfig) -> Vec<(u32, NormalSubgroup)> {
    let orders = element_orders(g);
    let mut out = Vec::new();
    for ell in [2, cfg.p, cfg.q] {
        let is_power = |mut o: usize| {
            while o % ell as usize == 0 {
                o /= ell as usize;
            }
            o == 1
        };
        let set: ElementSet = (0..g.order()).filter(|&c| is_power(orders[c])).collect();
        let mut full = ElementSet::with_capacity(g.order());
        full.union_with(&set);
        if let Ok(s) = NormalSubgroup::from_set(g, full) {
            out.push((ell, s));
        }
    }
    out
}

/// `S A ∩ S B = S (A ∩ B)` for a normal Sylow `S`.
fn normal_sylow(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    let g = inst.group(cfg)?;
    let ns = normals(&g, cfg)?;
    for (ell, s) in normal_sylows(&g, cfg) {
        distributes(&g, &s, &ns, t, &format!("Sylow {ell}"));
    }
    Ok(())
}

/// The same law for the product of the odd Sylow subgroups.
fn sylow_intersect(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    let g = inst.group(cfg)?;
    let ns = normals(&g, cfg)?;
    let s = sylow_product(&g)?;
    distributes(&g, &s, &ns, t, "odd Sylow product");
    Ok(())
}

fn distributes(g: &StructuredGroup, s: &NormalSubgroup, ns: &[NormalSubgroup], t: &mut Tally, what: &str) {
    let lifted: Vec<NormalSubgroup> = ns.iter().map(|a| product(g, s, a)).collect();
    for (i, a) in ns.iter().enumerate() {
        for (j, b) in ns.iter().enumerate() {
            let lhs = intersection(g, &lifted[i], &lifted[j]);
            let rhs = product(g, s, &intersection(g, a, b));
            t.check(lhs.elements == rhs.elements, || {
                format!("{what}, A = [{}], B = [{}]", a.golden_line(), b.golden_line())
            });
        }
    }
}

/// `a ≤ b ⇒ a ∨ (b ∧ c) = b ∧ (a ∨ c)` for element triples, and the same
/// for the subsystems generated by at most one class.
fn modular_law(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    let sys = system(inst, cfg)?;
    let k = sys.class_count();
    let mut meet = vec![vec![0; k]; k];
    let mut join = vec![vec![0; k]; k];
    for s in 0..k {
        for u in 0..k {
            meet[s][u] = class_meet(&sys, s, u)?;
            join[s][u] = class_join(&sys, s, u)?;
        }
    }
    let n = sys.element_count();
    let class: Vec<usize> = (0..n).map(|a| sys.class_of(a)).collect();
    for a in 0..n {
        for b in 0..n {
            if !sys.leq(a, b) {
                continue;
            }
            let (sa, sb) = (class[a], class[b]);
            for c in 0..n {
                let sc = class[c];
                let ok = join[sa][meet[sb][sc]] == meet[sb][join[sa][sc]];
                t.check(ok, || format!("elements {a} <= {b}, third {c}"));
            }
        }
    }

    let mut family = vec![Subsystem::generate(&sys, [])?];
    for s in 0..k {
        family.push(Subsystem::generate(&sys, [s])?);
    }
    for (i, lo) in family.iter().enumerate() {
        for (j, hi) in family.iter().enumerate() {
            if !lo.is_subset(hi) {
                continue;
            }
            for (l, other) in family.iter().enumerate() {
                let lhs = lo.join(&sys, &hi.meet(other))?;
                let rhs = hi.meet(&lo.join(&sys, other)?);
                t.check(lhs == rhs, || format!("subsystems #{i} <= #{j}, third #{l}"));
            }
        }
    }
    Ok(())
}

/// `G/(A ∩ B) ≅ G/A ×_{G/AB} G/B` through the canonical map, for every
/// pair of classes, with the class groups read off `P`.
fn fiber_iso(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    let sys = system(inst, cfg)?;
    let k = sys.class_count();
    let groups: Vec<TableGroup> = (0..k).map(|s| sys.class_group(s)).collect();
    for a in 0..k {
        for b in a..k {
            let d = class_join(&sys, a, b)?;
            let m = class_meet(&sys, a, b)?;
            let (ca, cb, cd, cm) = (sys.cosets(a), sys.cosets(b), sys.cosets(d), sys.cosets(m));
            let f = ca.induced(cd);
            let gmap = cb.induced(cd);
            let fp = fiber_product(&groups[a], &f, &groups[b], &gmap)?;
            // Pairs are listed lexicographically.
            let mut position = vec![usize::MAX; ca.index() * cb.index()];
            let mut next = 0;
            for x in 0..ca.index() {
                for y in 0..cb.index() {
                    if f.apply(x) == gmap.apply(y) {
                        position[x * cb.index() + y] = next;
                        next += 1;
                    }
                }
            }
            let images: Vec<usize> = (0..cm.index())
                .map(|i| {
                    let r = cm.reps[i];
                    position[ca.coset_of(r) * cb.index() + cb.coset_of(r)]
                })
                .collect();
            let ok = next == fp.order()
                && images.iter().all(|&y| y != usize::MAX)
                && Hom::from_images_checked(&groups[m], &fp, images).is_ok_and(|h| h.is_bijective());
            t.check(ok, || {
                format!(
                    "classes {a} [{}] and {b} [{}]",
                    sys.subgroup(a).golden_line(),
                    sys.subgroup(b).golden_line()
                )
            });
        }
    }
    Ok(())
}

/// Decoding the system (by relations, with and without labels) and decoding
/// the group from generator images all give back the graph.
fn graph_recovery(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    inst.require_plain(LemmaId::GraphRecovery)?;
    let sys = system(inst, cfg)?;
    let labeled = decode_labeled(&sys)?;
    t.check(labeled == inst.graph, || format!("labeled decode gave {}", Instance::new(labeled.clone(), 0)));
    let bare = decode(&sys)?;
    t.check(isomorphic(&bare, &inst.graph), || {
        format!("unlabeled decode gave {}", Instance::new(bare.clone(), 0))
    });
    let structured = decode_structured(sys.group())?;
    t.check(structured == inst.graph, || {
        format!("generator decode gave {}", Instance::new(structured.clone(), 0))
    });
    Ok(())
}

/// `C₂` classes are exactly the nonzero functionals, GF(2) width agrees with
/// the semantic width, and lattice independence agrees with linear
/// independence.
fn dictionary(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    let sys = system(inst, cfg)?;
    let alg = WidthAlgebra::new(&sys)?;
    let c2 = alg.c2_classes();
    let bits = sys.group().params().bit_count();
    let duals = c2.iter().map(|&s| alg.dual_vector(s)).collect::<Result<Vec<_>>>()?;
    t.check(c2.len() + 1 == 1 << bits, || {
        format!("{} C2 classes for {bits} parity bits", c2.len())
    });
    let distinct: BTreeSet<Vec<usize>> = duals.iter().map(|d| d.support()).collect();
    t.check(distinct.len() == duals.len() && !distinct.contains(&Vec::new()), || {
        "dual vectors are not distinct and nonzero".into()
    });
    for &s in &c2 {
        let fast = alg.vertex_width(s)?;
        let slow = alg.semantic_width(s)?;
        t.check(fast == slow, || {
            format!("class {s}: GF(2) width {:?} {:?}, semantic {:?} {:?}", fast.width, fast.witnesses, slow.width, slow.witnesses)
        });
    }
    for size in 1..=4.min(c2.len()) {
        for pick in combinations(c2.len(), size) {
            let classes: Vec<usize> = pick.iter().map(|&i| c2[i]).collect();
            let vecs: Vec<_> = pick.iter().map(|&i| duals[i].clone()).collect();
            let linear = gf2::independent(&vecs);
            t.check(linear == alg.lattice_independent(&classes), || {
                format!("classes {classes:?}: linear independence {linear}")
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Literal {
    #[cfg(test)]
    Yes,
    No,
}

/// For independent `γ₁..γ_k` and `α ≥ ⋀γ`: `γ_i ≥ α ∧ ⋀_{j≠i} γ_j` for
/// every `i` with `α ≱ ⋀_{j≠i} γ_j`. Without that side condition the
/// statement fails already for `α = γ₀`, `i = 1`.
fn exchange(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    exchange_with(inst, cfg, t, Literal::No)
}

fn exchange_with(inst: &Instance, cfg: &LabConfig, t: &mut Tally, literal: Literal) -> Result<()> {
    let sys = system(inst, cfg)?;
    let alg = WidthAlgebra::new(&sys)?;
    let c2 = alg.c2_classes();
    let set = |s: usize| &sys.subgroup(s).elements;
    for k in 1..=3.min(c2.len()) {
        for pick in combinations(c2.len(), k) {
            let gammas: Vec<usize> = pick.iter().map(|&i| c2[i]).collect();
            if !alg.lattice_independent(&gammas) {
                continue;
            }
            let meet_except = |skip: Option<usize>| {
                let mut m = ElementSet::with_capacity(sys.group().order());
                m.insert_range(..);
                for (j, &s) in gammas.iter().enumerate() {
                    if Some(j) != skip {
                        m.intersect_with(set(s));
                    }
                }
                m
            };
            let all = meet_except(None);
            for &alpha in &c2 {
                if !all.is_subset(set(alpha)) {
                    continue;
                }
                for i in 0..k {
                    let mut rest = meet_except(Some(i));
                    if literal == Literal::No && rest.is_subset(set(alpha)) {
                        // `α` lies over the other `γ_j` alone, so it cannot
                        // be exchanged for `γ_i`.
                        continue;
                    }
                    rest.intersect_with(set(alpha));
                    t.check(rest.is_subset(set(gammas[i])), || {
                        format!("gammas {gammas:?}, alpha {alpha}, position {i}")
                    });
                }
            }
        }
    }
    Ok(())
}

/// Parity classes have width `|V₀|` with witnesses `V₀`, and every finite
/// width `C₂` class is the parity class of its witnesses and contains the
/// odd Sylow product.
fn parity(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    let sys = system(inst, cfg)?;
    let alg = WidthAlgebra::new(&sys)?;
    let g = sys.group();
    let labels = g.params().vertices().to_vec();
    for k in 1..=labels.len() {
        for pick in combinations(labels.len(), k) {
            let names: Vec<&str> = pick.iter().map(|&v| labels[v].as_str()).collect();
            let s = sys.class_of(alg.parity_element(&names)?);
            let rep = alg.semantic_width(s)?;
            let ok = rep.width == Width::Finite(k) && rep.witnesses.iter().map(String::as_str).eq(names.iter().copied());
            t.check(ok, || format!("parity over {names:?} has width {:?} {:?}", rep.width, rep.witnesses));
        }
    }
    let odd = sylow_product(g)?;
    for s in alg.c2_classes() {
        let rep = alg.semantic_width(s)?;
        if rep.width == Width::Infinite {
            continue;
        }
        let idx = rep
            .witnesses
            .iter()
            .map(|v| g.params().vertex_index(v))
            .collect::<Result<Vec<_>>>()?;
        let expected: ElementSet = (0..g.order())
            .filter(|&c| {
                let e = g.element(c);
                idx.iter().map(|&v| e.vertex_part(v).tau() as usize).sum::<usize>() % 2 == 0
            })
            .collect();
        let n = sys.subgroup(s);
        let mut want = ElementSet::with_capacity(g.order());
        want.union_with(&expected);
        t.check(n.elements == want && odd.is_subset(n), || {
            format!("class {s} [{}] with witnesses {:?}", n.golden_line(), rep.witnesses)
        });
    }
    Ok(())
}

/// Every nontrivial class is in the closure of the `C₂` classes above it.
fn c2_generation(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    let sys = system(inst, cfg)?;
    let alg = WidthAlgebra::new(&sys)?;
    let c2 = alg.c2_classes();
    for d in 1..sys.class_count() {
        let ids: Vec<usize> = c2
            .iter()
            .filter(|&&c| sys.subgroup(d).is_subset(sys.subgroup(c)))
            .map(|&c| sys.identity_element(c))
            .collect();
        let closure = alg.gcl(&ids)?;
        t.check(closure.contains_class(d), || {
            format!("class {d} [{}] from {} C2 classes", sys.subgroup(d).golden_line(), ids.len())
        });
    }
    Ok(())
}

/// `gcl` is idempotent, yields a subsystem, and its vertex and edge classes
/// form an induced subgraph.
fn gcl_idempotent(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    let sys = system(inst, cfg)?;
    let alg = WidthAlgebra::new(&sys)?;
    let g = sys.group();
    let edge_classes = (0..g.params().edges().len())
        .map(|r| {
            sys.find_subgroup(&g.edge_projection(r).kernel())
                .ok_or_else(|| Error::Closure(format!("kernel of edge {}", edge_name(g, r))))
        })
        .collect::<Result<Vec<_>>>()?;
    let k = sys.class_count();
    let mut seeds: Vec<Vec<usize>> = (0..k).map(|s| vec![s]).collect();
    if k <= 40 {
        for pick in combinations(k, 2) {
            seeds.push(pick);
        }
    }
    for seed in seeds {
        let ids: Vec<usize> = seed.iter().map(|&s| sys.identity_element(s)).collect();
        let once = alg.gcl(&ids)?;
        let again_ids: Vec<usize> = once.class_ids().map(|s| sys.identity_element(s)).collect();
        let twice = alg.gcl(&again_ids)?;
        let vertices: Vec<usize> = (0..g.params().vertices().len())
            .filter(|&v| once.contains_class(alg.vertex_class(v)))
            .collect();
        let induced = g.params().edges().iter().enumerate().all(|(r, (u, v))| {
            let both = vertices.contains(u) && vertices.contains(v);
            both == once.contains_class(edge_classes[r])
        });
        t.check(once == twice && once.is_subsystem(&sys) && induced, || {
            format!("seed classes {seed:?}")
        });
    }
    Ok(())
}

/// The defining formulas pick out exactly the width-`n` classes, and the
/// containment formulas grow with `n`.
fn width_definability(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    let sys = system(inst, cfg)?;
    let alg = WidthAlgebra::new(&sys)?;
    let mut psi_sets: Vec<BTreeSet<usize>> = Vec::new();
    for n in 1..=3 {
        let phi = builtin(&format!("phi({n})"), cfg.p, cfg.q)?;
        let got: BTreeSet<usize> = solution_set(&sys, &phi)?.into_iter().collect();
        let mut want = BTreeSet::new();
        for s in alg.c2_classes() {
            if alg.vertex_width(s)?.width == Width::Finite(n) {
                want.extend(sys.class_elements(s));
            }
        }
        t.check(got == want, || format!("phi({n}) has {} solutions, expected {}", got.len(), want.len()));
        let psi = builtin(&format!("psi({n})"), cfg.p, cfg.q)?;
        psi_sets.push(solution_set(&sys, &psi)?.into_iter().collect());
    }
    for n in 1..psi_sets.len() {
        t.check(psi_sets[n - 1].is_subset(&psi_sets[n]), || format!("psi({n}) not inside psi({})", n + 1));
    }
    Ok(())
}

/// Every quotient satisfies the bounding claims.
fn bounding(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    let g = inst.group(cfg)?;
    for n in normals(&g, cfg)? {
        let report = check_bounding(&g, &n)?;
        t.check(report.passed(), || {
            let failed: Vec<&str> = report.claims.iter().filter(|c| !c.holds).map(|c| c.name).collect();
            format!("N = [{}] fails {}", n.golden_line(), failed.join(","))
        });
    }
    let dq = dq_group(cfg.q);
    let involution = (0..dq.order()).find(|&a| a != 0 && dq.mul(a, a) == 0).unwrap_or(0);
    let generated = normal_closure_order(&dq, involution);
    t.check(generated == dq.order(), || "the involutions of D_q do not generate it".into());
    Ok(())
}

fn normal_closure_order(g: &TableGroup, a: usize) -> usize {
    crate::subgroups::normal_closure(g, &[a], g.order()).map(|n| n.order).unwrap_or(0)
}

/// Every pair of automorphisms of `D_p` preserves parity and extends to `W`
/// compatibly with the quotient map.
fn extend_auts(cfg: &LabConfig, t: &mut Tally) {
    let auts = dp_automorphisms(cfg.p);
    for (i, s1) in auts.iter().enumerate() {
        let parity_ok = DpElement::all(cfg.p).all(|d| DpElement::decode(cfg.p, s1.apply(d.encode())).tau() == d.tau());
        t.check(parity_ok, || format!("automorphism #{i} of D_p changes parity"));
        for (j, s2) in auts.iter().enumerate() {
            t.check(extend_w_automorphism(cfg.p, cfg.q, s1, s2).is_ok(), || {
                format!("automorphisms #{i} and #{j} of D_p do not extend")
            });
        }
    }
}

const AUT_SEARCH_LIMIT: usize = 200;

/// Every automorphism is a coordinatewise map after a coordinate change.
fn factoring(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    inst.require_plain(LemmaId::Factoring)?;
    let g = inst.group(cfg)?;
    if g.order() > AUT_SEARCH_LIMIT {
        return Err(budget("automorphism search", g.order() as u64, AUT_SEARCH_LIMIT as u64));
    }
    for (i, phi) in automorphisms(&g).iter().enumerate() {
        let ok = match factor(&g, phi) {
            Ok((_, sigma)) => assemble(&g, &coordinate_maps_of(&g, &sigma)).is_ok_and(|h| h == sigma),
            Err(_) => false,
        };
        t.check(ok, || format!("automorphism #{i} with generator images {:?}", generator_images(&g, phi)));
    }
    Ok(())
}

fn generator_images(g: &StructuredGroup, phi: &Hom) -> Vec<usize> {
    g.generators().iter().map(|&s| phi.apply(s)).collect()
}

/// Automorphisms of `W` that induce the identity on `D_p × D_p`: scaling
/// the `C_q` part and conjugating by powers of `δ`.
fn w_fiber_automorphisms(p: u32, q: u32) -> Vec<Hom> {
    let w = w_group(p, q);
    let delta = WElement::delta(p, q).encode();
    let mut out = Vec::new();
    for k in 1..q {
        for j in 0..2 {
            let s = pow(&w, delta, j);
            let images: Vec<usize> = WElement::all(p, q)
                .map(|e| {
                    let scaled = WElement::new(q, e.z * k % q, e.b, e.c).encode();
                    conjugate(&w, scaled, s)
                })
                .collect();
            out.push(Hom {
                images,
                target_order: w.order(),
            });
        }
    }
    out
}

fn graph_automorphisms(g: &StructuredGroup) -> Result<Vec<Vec<usize>>> {
    let params = g.params();
    let n = params.vertices().len();
    if n > 6 {
        return Err(budget("graph automorphism search", n as u64, 6));
    }
    let adjacent = |a: usize, b: usize| {
        let (u, v) = (a.min(b), a.max(b));
        params.edges().contains(&(u, v))
    };
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |f| {
        if (0..n).all(|a| (0..n).all(|b| a == b || adjacent(a, b) == adjacent(f[a], f[b]))) {
            out.push(f.to_vec());
        }
    });
    Ok(out)
}

fn permute(perm: &mut Vec<usize>, i: usize, visit: &mut impl FnMut(&[usize])) {
    if i == perm.len() {
        visit(perm);
        return;
    }
    for j in i..perm.len() {
        perm.swap(i, j);
        permute(perm, i + 1, visit);
        perm.swap(i, j);
    }
}

/// Automorphisms assembled from compatible coordinate maps induce system
/// automorphisms that restrict to the given maps on the vertex and edge
/// classes, and are determined by those restrictions.
fn unique_aut(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    inst.require_plain(LemmaId::UniqueAut)?;
    let sys = system(inst, cfg)?;
    let g = sys.group();
    let params = g.params().clone();
    let (nv, nr) = (params.vertices().len(), params.edges().len());
    if nv > 3 {
        return Err(budget("coordinate map tuples", nv as u64, 3));
    }
    let (p, q) = (cfg.p, cfg.q);
    let vertex_classes = (0..nv)
        .map(|v| {
            sys.find_subgroup(&g.vertex_projection(v).kernel())
                .ok_or_else(|| Error::Closure("vertex kernel".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let edge_classes = (0..nr)
        .map(|r| {
            sys.find_subgroup(&g.edge_projection(r).kernel())
                .ok_or_else(|| Error::Closure("edge kernel".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let fixed: Vec<usize> = vertex_classes.iter().chain(&edge_classes).copied().collect();
    let bottom = sys.class_count() - 1;
    let bottom_range = sys.class_elements(bottom);
    let dp_auts = dp_automorphisms(p);
    let fiber = w_fiber_automorphisms(p, q);

    let restricts = |auto: &SystemAutomorphism, s: usize, read: &dyn Fn(usize) -> usize, map: &Hom| {
        let r = sys.class_elements(s);
        auto.class_map[s] == s
            && r.clone().enumerate().all(|(k, id)| {
                let img = auto.element_map[id] - r.start;
                read(sys.cosets(s).reps[img]) == map.apply(read(sys.cosets(s).reps[k]))
            })
    };

    let mut choice = vec![0usize; nv + nr];
    let radix: Vec<usize> = (0..nv).map(|_| dp_auts.len()).chain((0..nr).map(|_| fiber.len())).collect();
    loop {
        let mut maps = CoordinateMaps::identity(g);
        for v in 0..nv {
            maps.vertex[v] = dp_auts[choice[v]].clone();
        }
        for (r, &(u, v)) in params.edges().iter().enumerate() {
            let nu = extend_w_automorphism(p, q, &maps.vertex[u], &maps.vertex[v])?;
            maps.edge[r] = nu.then(&fiber[choice[nv + r]]);
        }
        let describe = || format!("coordinate choice {choice:?}");
        match assemble(g, &maps) {
            Err(_) => t.check(false, describe),
            Ok(phi) => {
                let auto = SystemAutomorphism::from_group_automorphism(&sys, &phi)?;
                let mut ok = auto.preserves_structure(&sys);
                for v in 0..nv {
                    let read = |c: usize| g.element(c).vertex_part(v).encode();
                    ok &= restricts(&auto, vertex_classes[v], &read, &maps.vertex[v]);
                }
                for r in 0..nr {
                    let read = |c: usize| g.element(c).edge_part(r).encode();
                    ok &= restricts(&auto, edge_classes[r], &read, &maps.edge[r]);
                }
                let rebuilt = reconstruct_bottom(&sys, &fixed, &auto);
                ok &= rebuilt.as_deref() == Some(&auto.element_map[bottom_range.clone()]);
                if let Some(bottom_map) = rebuilt {
                    let reps = &sys.cosets(bottom).reps;
                    let mut images = vec![0; g.order()];
                    for (k, &y) in bottom_map.iter().enumerate() {
                        images[reps[k]] = reps[y - bottom_range.start];
                    }
                    ok &= images == phi.images;
                }
                t.check(ok, describe);
            }
        }
        let mut i = choice.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < radix[i] {
                break;
            }
            choice[i] = 0;
        }
        if choice.iter().all(|&c| c == 0) {
            break;
        }
    }

    for f in graph_automorphisms(g)? {
        let phi = coordinate_change(g, &f)?;
        let auto = SystemAutomorphism::from_group_automorphism(&sys, &phi)?;
        let moves = (0..nv).all(|v| auto.class_map[vertex_classes[v]] == vertex_classes[f[v]]);
        let determined =
            reconstruct_bottom(&sys, &fixed, &auto).as_deref() == Some(&auto.element_map[bottom_range.clone()]);
        t.check(moves && determined && auto.preserves_structure(&sys), || {
            format!("coordinate change {f:?}")
        });
    }
    Ok(())
}

/// The restriction `G_Γ → G_{Γ₀}` to the subgraph on the listed vertices.
fn restriction(g: &StructuredGroup, sub: &StructuredGroup, vmap: &[usize]) -> Result<Hom> {
    let params = g.params();
    let sub_params = sub.params();
    let edge_map = (0..sub_params.edges().len())
        .map(|r| {
            let (a, b) = sub_params.edge_label(r);
            params.edge_index(a, b)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut images = Vec::with_capacity(g.order());
    for c in 0..g.order() {
        let form = g.element(c).to_product_form();
        let out = ProductForm {
            vertices: vmap.iter().map(|&v| form.vertices[v]).collect(),
            edges: edge_map.iter().map(|&r| form.edges[r]).collect(),
            extra: Vec::new(),
        };
        images.push(StructuredElement::from_product_form(sub_params, &out)?.encode());
    }
    Ok(Hom {
        images,
        target_order: sub.order(),
    })
}

/// Automorphisms of an edgeless induced subgraph's group lift along every
/// graph automorphism extending the induced vertex map.
fn lifting(inst: &Instance, cfg: &LabConfig, t: &mut Tally) -> Result<()> {
    inst.require_plain(LemmaId::Lifting)?;
    let g = inst.group(cfg)?;
    let params = g.params().clone();
    let labels = params.vertices().to_vec();
    let graph_auts = graph_automorphisms(&g)?;
    for k in 1..=2.min(labels.len()) {
        for vmap in combinations(labels.len(), k) {
            let keep: Vec<String> = vmap.iter().map(|&v| labels[v].clone()).collect();
            let sub_graph = inst.graph.induced(&keep);
            if sub_graph.edge_count() > 0 {
                continue;
            }
            let sub = encode(&sub_graph, 0, cfg.p, cfg.q)?;
            let rho = restriction(&g, &sub, &vmap)?;
            for phi0 in automorphisms(&sub) {
                let f0 = induced_graph_map(&sub, &phi0)?;
                let (_, sigma0) = factor(&sub, &phi0)?;
                let local = coordinate_maps_of(&sub, &sigma0);
                for f in &graph_auts {
                    if (0..k).any(|i| f[vmap[i]] != vmap[f0[i]]) {
                        continue;
                    }
                    let mut maps = CoordinateMaps::identity(&g);
                    for i in 0..k {
                        maps.vertex[vmap[i]] = local.vertex[i].clone();
                    }
                    for (r, &(u, v)) in params.edges().iter().enumerate() {
                        maps.edge[r] = extend_w_automorphism(cfg.p, cfg.q, &maps.vertex[u], &maps.vertex[v])?;
                    }
                    let ok = match (assemble(&g, &maps), coordinate_change(&g, f)) {
                        (Ok(sigma), Ok(phi_f)) => {
                            let phi = phi_f.then(&sigma);
                            induced_graph_map(&g, &phi).is_ok_and(|m| m == *f)
                                && (0..g.order()).all(|x| rho.apply(phi.apply(x)) == phi0.apply(rho.apply(x)))
                        }
                        _ => false,
                    };
                    t.check(ok, || {
                        format!(
                            "subgraph {keep:?}, automorphism with generator images {:?}, graph map {f:?}",
                            generator_images(&sub, &phi0)
                        )
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip_and_are_unique() {
        let names: BTreeSet<&str> = LemmaId::ALL.iter().map(|id| id.name()).collect();
        assert_eq!(names.len(), LemmaId::ALL.len());
        for &id in LemmaId::ALL {
            assert_eq!(id.name().parse::<LemmaId>().unwrap(), id);
            assert!(!default_instances(id, Scale::Small).is_empty());
        }
        assert!("easy-9".parse::<LemmaId>().is_err());
    }

    #[test]
    fn instance_syntax() {
        for text in ["empty", "a", "a-b", "a-b+1", "+2", "a,b", "a-b,c", "a-b,b-c"] {
            let inst = Instance::parse(text).unwrap();
            assert_eq!(inst.to_string(), text);
        }
        let inst = Instance::parse("b-a, c").unwrap();
        assert_eq!(inst.graph.vertices(), ["a", "b", "c"]);
        assert!(inst.graph.has_edge("a", "b"));
        match Instance::parse("a,,b") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        match parse_instances("a;b-") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_instances("a;a-b+1").unwrap().len(), 2);
    }

    #[test]
    fn hypotheses_are_enforced() {
        let cfg = LabConfig::default();
        let edge = Instance::parse("a-b").unwrap();
        assert!(matches!(verify(LemmaId::VertexRotations, &edge, &cfg), Err(Error::Contract(_))));
        let extra = Instance::parse("a+1").unwrap();
        assert!(matches!(verify(LemmaId::FrattiniTrivial, &extra, &cfg), Err(Error::Contract(_))));
    }

    #[test]
    fn small_single_vertex_checks_pass() {
        let cfg = LabConfig::default();
        let a = Instance::parse("a").unwrap();
        for id in [
            LemmaId::VertexRotations,
            LemmaId::VertexFactor,
            LemmaId::StillProper,
            LemmaId::NoUnexpected,
            LemmaId::FrattiniTrivial,
            LemmaId::ModularLaw,
            LemmaId::GraphRecovery,
            LemmaId::Dictionary,
            LemmaId::Factoring,
            LemmaId::UniqueAut,
        ] {
            let r = verify(id, &a, &cfg).unwrap();
            assert_eq!(r.status, Status::Pass, "{id}: {:?}", r.counterexample);
            assert!(r.checked_count > 0, "{id}");
        }
    }

    #[test]
    fn exchange_needs_alpha_to_involve_the_exchanged_class() {
        let cfg = LabConfig::default();
        let inst = Instance::parse("a,b").unwrap();
        let mut literal = Tally::default();
        exchange_with(&inst, &cfg, &mut literal, Literal::Yes).unwrap();
        assert!(literal.counterexample.is_some());
        let r = verify(LemmaId::Exchange, &inst, &cfg).unwrap();
        assert_eq!(r.status, Status::Pass, "{:?}", r.counterexample);
    }

    #[test]
    fn failure_is_reported_with_the_first_counterexample() {
        let mut t = Tally::default();
        t.check(true, || unreachable!());
        t.check(false, || "first".into());
        t.check(false, || "second".into());
        assert_eq!(t.checked, 3);
        assert_eq!(t.counterexample.as_deref(), Some("first"));
    }
}
