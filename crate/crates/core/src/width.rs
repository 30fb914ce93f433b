//! The dictionary between `C₂` classes and GF(2) functionals, vertex width,
//! independence, parity classes and the graph closure `gcl`.

use alloc::string::String;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::gf2::{self, F2Vector};
use crate::group::{ElementSet, FiniteGroup};
use crate::groups::StructuredGroup;
use crate::subgroups::IsoTag;
use crate::system::{Subsystem, System};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Width {
    Finite(usize),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WidthReport {
    pub width: Width,
    /// Sorted vertex labels; empty for infinite width.
    pub witnesses: Vec<String>,
}

/// Width computations over the system of an encoded group.
#[derive(Debug)]
pub struct WidthAlgebra<'a> {
    sys: &'a System<StructuredGroup>,
    /// Class of `ker π_v` for each vertex.
    vertex_class: Vec<usize>,
    /// Code of the element with a single `1` at each position of the
    /// `x`-array.
    unit_codes: Vec<usize>,
}

impl<'a> WidthAlgebra<'a> {
    /// Fails if some `ker π_v` is not in the system's family.
    pub fn new(sys: &'a System<StructuredGroup>) -> Result<Self> {
        let g = sys.group();
        let params = g.params();
        let nv = params.vertices().len();
        let mut vertex_class = Vec::with_capacity(nv);
        for v in 0..nv {
            let k = g.vertex_projection(v).kernel();
            let s = sys
                .find_subgroup(&k)
                .ok_or_else(|| Error::Closure(alloc::format!("kernel of vertex `{}`", params.vertices()[v])))?;
            vertex_class.push(s);
        }
        let beta = crate::groups::DpElement::beta(params.p());
        let mut unit_codes: Vec<usize> = (0..nv).map(|v| g.vertex_code(v, beta)).collect();
        unit_codes.extend((0..params.extra().len()).map(|i| g.extra_code(i)));
        Ok(WidthAlgebra {
            sys,
            vertex_class,
            unit_codes,
        })
    }

    pub fn system(&self) -> &System<StructuredGroup> {
        self.sys
    }

    pub fn vertex_class(&self, v: usize) -> usize {
        self.vertex_class[v]
    }

    pub fn vertex_classes(&self) -> &[usize] {
        &self.vertex_class
    }

    fn label(&self, v: usize) -> String {
        self.sys.group().params().vertices()[v].clone()
    }

    pub fn c2_classes(&self) -> Vec<usize> {
        (0..self.sys.class_count())
            .filter(|&s| self.sys.tag(s) == IsoTag::C2)
            .collect()
    }

    fn require_c2(&self, s: usize) -> Result<()> {
        if self.sys.tag(s) == IsoTag::C2 {
            Ok(())
        } else {
            Err(Error::Contract(alloc::format!("class {s} is not a C2 class")))
        }
    }

    /// `d([α])`: the functional on `C₂^{V∪I}` with kernel the image of `α`'s
    /// subgroup, read off on the unit generators.
    pub fn dual_vector(&self, s: usize) -> Result<F2Vector> {
        self.require_c2(s)?;
        let n = self.sys.subgroup(s);
        Ok(F2Vector::from_bits(self.unit_codes.iter().map(|&c| !n.contains(c))))
    }

    /// Width from the support of the dual vector.
    pub fn vertex_width(&self, s: usize) -> Result<WidthReport> {
        let d = self.dual_vector(s)?;
        let nv = self.vertex_class.len();
        let support = d.support();
        if support.iter().any(|&w| w >= nv) {
            return Ok(WidthReport {
                width: Width::Infinite,
                witnesses: Vec::new(),
            });
        }
        let mut witnesses: Vec<String> = support.iter().map(|&v| self.label(v)).collect();
        witnesses.sort();
        Ok(WidthReport {
            width: Width::Finite(support.len()),
            witnesses,
        })
    }

    /// Width by search: the least `n` such that the subgroup of `α` contains
    /// the intersection of `n` distinct `D_p` classes, trying subsets by size
    /// and then lexicographically. Uses the system's `D_p` tags, not the
    /// vertex kernels.
    pub fn semantic_width(&self, s: usize) -> Result<WidthReport> {
        self.require_c2(s)?;
        let dp: Vec<usize> = (0..self.sys.class_count())
            .filter(|&c| self.sys.tag(c) == IsoTag::Dp)
            .collect();
        let target = &self.sys.subgroup(s).elements;
        let order = self.sys.group().order();
        for n in 1..=dp.len() {
            let mut pick: Vec<usize> = (0..n).collect();
            loop {
                let mut meet = ElementSet::with_capacity(order);
                meet.insert_range(..);
                for &i in &pick {
                    meet.intersect_with(&self.sys.subgroup(dp[i]).elements);
                }
                if meet.is_subset(target) {
                    let mut witnesses: Vec<String> = pick
                        .iter()
                        .map(|&i| match self.vertex_class.iter().position(|&c| c == dp[i]) {
                            Some(v) => self.label(v),
                            None => alloc::format!("{}", dp[i]),
                        })
                        .collect();
                    witnesses.sort();
                    return Ok(WidthReport {
                        width: Width::Finite(n),
                        witnesses,
                    });
                }
                if !next_combination(&mut pick, dp.len()) {
                    break;
                }
            }
        }
        Ok(WidthReport {
            width: Width::Infinite,
            witnesses: Vec::new(),
        })
    }

    /// Linear independence of the dual vectors, cross-checked against the
    /// lattice condition that no class contains the meet of the earlier ones.
    pub fn independent(&self, classes: &[usize]) -> Result<bool> {
        let vecs = classes.iter().map(|&s| self.dual_vector(s)).collect::<Result<Vec<_>>>()?;
        let linear = gf2::independent(&vecs);
        let lattice = self.lattice_independent(classes);
        if linear != lattice {
            return Err(Error::Contract("linear and lattice independence disagree".into()));
        }
        Ok(linear)
    }

    /// `γ_i ≱ ⋀_{j<i} γ_j` for every `i`, with the empty meet the top.
    pub fn lattice_independent(&self, classes: &[usize]) -> bool {
        let order = self.sys.group().order();
        let mut meet = ElementSet::with_capacity(order);
        meet.insert_range(..);
        for &s in classes {
            let n = &self.sys.subgroup(s).elements;
            if meet.is_subset(n) {
                return false;
            }
            meet.intersect_with(n);
        }
        true
    }

    /// Identity coset of `ker(Σ_{v∈V₀} e_v ∘ ξ)`.
    pub fn parity_element(&self, vertices: &[&str]) -> Result<usize> {
        if vertices.is_empty() {
            return Err(Error::Contract("parity over an empty vertex set".into()));
        }
        let g = self.sys.group();
        let idx = vertices
            .iter()
            .map(|v| g.params().vertex_index(v))
            .collect::<Result<Vec<_>>>()?;
        let set: ElementSet = (0..g.order())
            .filter(|&c| {
                let x = g.xi_bits(c);
                idx.iter().map(|&v| x[v] as usize).sum::<usize>() % 2 == 0
            })
            .collect();
        let mut full = ElementSet::with_capacity(g.order());
        full.union_with(&set);
        let s = self
            .sys
            .find_subgroup(&full)
            .ok_or_else(|| Error::Closure("parity kernel".into()))?;
        Ok(self.sys.identity_element(s))
    }

    /// Graph closure of a set of elements: generate a subsystem, add the
    /// vertex classes witnessing each finite-width `C₂` member and every `W`
    /// class below two distinct member `D_p` classes, and repeat to a
    /// fixpoint.
    pub fn gcl(&self, ids: &[usize]) -> Result<Subsystem> {
        let sys = self.sys;
        let mut current = Subsystem::from_elements(sys, ids)?;
        loop {
            let mut add: FixedBitSet = current.classes.clone();
            let members: Vec<usize> = current.class_ids().collect();
            for &s in &members {
                if sys.tag(s) != IsoTag::C2 {
                    continue;
                }
                let d = self.dual_vector(s)?;
                if d.support().iter().all(|&w| w < self.vertex_class.len()) {
                    for v in d.support() {
                        add.insert(self.vertex_class[v]);
                    }
                }
            }
            let dp: Vec<usize> = members.iter().copied().filter(|&s| sys.tag(s) == IsoTag::Dp).collect();
            for (i, &a) in dp.iter().enumerate() {
                for &b in &dp[i + 1..] {
                    for w in 0..sys.class_count() {
                        if sys.tag(w) == IsoTag::W && sys.subset(w, a) && sys.subset(w, b) {
                            add.insert(w);
                        }
                    }
                }
            }
            let next = Subsystem::generate(sys, add.ones())?;
            if next == current {
                return Ok(current);
            }
            current = next;
        }
    }
}

/// Advances `pick` (strictly increasing, values below `n`) to the next
/// combination in lexicographic order.
pub(crate) fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{encode, Graph};
    use crate::subgroups::{enumerate_normal, DEFAULT_MAX_ORDER};

    fn system(v: &[&str], e: &[(&str, &str)], k: usize) -> System<StructuredGroup> {
        let g = encode(&Graph::new(v, e).unwrap(), k, 3, 5).unwrap();
        let ns = enumerate_normal(&g, DEFAULT_MAX_ORDER).unwrap();
        System::build(g, 3, 5, ns).unwrap()
    }

    #[test]
    fn combinations_in_order() {
        let mut pick = vec![0, 1];
        let mut seen = vec![pick.clone()];
        while next_combination(&mut pick, 4) {
            seen.push(pick.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2]);
    }

    #[test]
    fn widths_on_one_vertex_with_extra() {
        let sys = system(&["a"], &[], 1);
        let alg = WidthAlgebra::new(&sys).unwrap();
        let mut widths: Vec<Width> = alg
            .c2_classes()
            .iter()
            .map(|&s| alg.vertex_width(s).unwrap().width)
            .collect();
        widths.sort();
        assert_eq!(widths, vec![Width::Finite(1), Width::Infinite, Width::Infinite]);
        for s in alg.c2_classes() {
            assert_eq!(alg.vertex_width(s).unwrap(), alg.semantic_width(s).unwrap());
        }
    }

    #[test]
    fn parity_of_three_vertices() {
        let sys = system(&["a", "b", "c"], &[], 0);
        let alg = WidthAlgebra::new(&sys).unwrap();
        let id = alg.parity_element(&["a", "b", "c"]).unwrap();
        let r = alg.vertex_width(sys.class_of(id)).unwrap();
        assert_eq!(r.width, Width::Finite(3));
        assert_eq!(r.witnesses, vec!["a", "b", "c"]);
        let ea = sys.class_of(alg.parity_element(&["a"]).unwrap());
        let eb = sys.class_of(alg.parity_element(&["b"]).unwrap());
        let eab = sys.class_of(alg.parity_element(&["a", "b"]).unwrap());
        assert!(alg.independent(&[ea, eb]).unwrap());
        assert!(!alg.independent(&[ea, eb, eab]).unwrap());
    }

    #[test]
    fn gcl_of_parity_on_edge() {
        let sys = system(&["a", "b"], &[("a", "b")], 0);
        let alg = WidthAlgebra::new(&sys).unwrap();
        let par = alg.parity_element(&["a", "b"]).unwrap();
        let cl = alg.gcl(&[par]).unwrap();
        assert!(cl.contains_class(alg.vertex_class(0)));
        assert!(cl.contains_class(alg.vertex_class(1)));
        assert!(cl.class_ids().any(|s| sys.tag(s) == IsoTag::W));
        assert_eq!(alg.gcl(&[]).unwrap().len(), 1);
    }
}
