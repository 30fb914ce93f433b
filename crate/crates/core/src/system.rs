//! The complete system `S(G)` of a finite group: all cosets of a family of
//! normal subgroups, with the relations `≤`, `C`, `P` and sort membership.
//!
//! Classes are identified with subgroup ids. Subgroups are kept in canonical
//! order (increasing index), and element ids are assigned class by class in
//! that order, so every sort `X_n` is a prefix of the element ids.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{conjugate, Closure, ElementSet, FiniteGroup, TableGroup};
use crate::subgroups::{iso_tag, CosetMap, IsoTag, NormalSubgroup, QuotientView};

/// A coset `gN`: the subgroup id and the minimal code in the coset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SystemElement {
    pub subgroup: usize,
    pub rep: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Leq,
    C,
    P,
    Eq,
    SortMem(usize),
}

#[derive(Debug, Clone)]
pub struct System<G> {
    group: G,
    p: u32,
    q: u32,
    subgroups: Vec<NormalSubgroup>,
    cosets: Vec<CosetMap>,
    offsets: Vec<usize>,
    /// `contained[i]` holds every `j` with `N_i ⊆ N_j`.
    contained: Vec<FixedBitSet>,
    meets: Vec<Option<usize>>,
    joins: Vec<Option<usize>>,
    tags: Vec<IsoTag>,
}

fn check_normal<G: FiniteGroup>(g: &G, n: &NormalSubgroup) -> bool {
    let c = Closure::generated(g, &n.gens);
    c.set == n.elements
        && n.gens
            .iter()
            .all(|&t| g.generators().iter().all(|&h| n.contains(conjugate(g, t, h))))
}

impl<G: FiniteGroup> System<G> {
    /// Builds the system over `subgroups`, which must be normal. The family
    /// is deduplicated and sorted; meets and joins outside it are recorded as
    /// missing rather than rejected.
    pub fn build(group: G, p: u32, q: u32, subgroups: Vec<NormalSubgroup>) -> Result<Self> {
        let mut subgroups = subgroups;
        for n in &subgroups {
            if n.elements.len() != group.order() || !check_normal(&group, n) {
                return Err(Error::Contract("family member is not a normal subgroup".into()));
            }
        }
        subgroups.sort_by(|a, b| a.canonical_cmp(b));
        subgroups.dedup_by(|a, b| a.elements == b.elements);
        if subgroups.first().is_none_or(|n| n.index != 1) {
            return Err(Error::Contract("family must contain the whole group".into()));
        }
        let k = subgroups.len();
        let lookup: BTreeMap<&ElementSet, usize> = subgroups.iter().enumerate().map(|(i, n)| (&n.elements, i)).collect();
        let cosets: Vec<CosetMap> = subgroups.iter().map(|n| CosetMap::new(&group, n)).collect();
        let mut offsets = Vec::with_capacity(k + 1);
        let mut total = 0;
        for n in &subgroups {
            offsets.push(total);
            total += n.index;
        }
        offsets.push(total);
        let mut contained = vec![FixedBitSet::with_capacity(k); k];
        for i in 0..k {
            for j in 0..k {
                if subgroups[i].is_subset(&subgroups[j]) {
                    contained[i].insert(j);
                }
            }
        }
        let mut meets = vec![None; k * k];
        let mut joins = vec![None; k * k];
        for i in 0..k {
            for j in 0..k {
                let mut m = subgroups[i].elements.clone();
                m.intersect_with(&subgroups[j].elements);
                meets[i * k + j] = lookup.get(&m).copied();
                // NM is the smallest member above both exactly when the
                // orders match |N||M|/|N∩M|.
                let want = subgroups[i].order * subgroups[j].order / m.count_ones(..);
                joins[i * k + j] = contained[i]
                    .intersection(&contained[j])
                    .find(|&c| subgroups[c].order == want);
            }
        }
        let tags = cosets
            .iter()
            .map(|c| {
                iso_tag(
                    &QuotientView {
                        parent: &group,
                        cosets: c,
                    },
                    p,
                    q,
                )
            })
            .collect();
        Ok(System {
            group,
            p,
            q,
            subgroups,
            cosets,
            offsets,
            contained,
            meets,
            joins,
            tags,
        })
    }
}

impl<G: FiniteGroup> System<G> {
    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn primes(&self) -> (u32, u32) {
        (self.p, self.q)
    }

    pub fn subgroups(&self) -> &[NormalSubgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, s: usize) -> &NormalSubgroup {
        &self.subgroups[s]
    }

    pub fn cosets(&self, s: usize) -> &CosetMap {
        &self.cosets[s]
    }

    pub fn class_count(&self) -> usize {
        self.subgroups.len()
    }

    pub fn element_count(&self) -> usize {
        self.offsets[self.subgroups.len()]
    }

    pub fn tag(&self, s: usize) -> IsoTag {
        self.tags[s]
    }

    pub fn tags(&self) -> &[IsoTag] {
        &self.tags
    }

    pub fn find_subgroup(&self, set: &ElementSet) -> Option<usize> {
        self.subgroups.iter().position(|n| &n.elements == set)
    }

    /// Element ids of the class `s`, identity coset first.
    pub fn class_elements(&self, s: usize) -> Range<usize> {
        self.offsets[s]..self.offsets[s + 1]
    }

    pub fn identity_element(&self, s: usize) -> usize {
        self.offsets[s]
    }

    /// Element ids of sort `X_n`.
    pub fn sort_extent(&self, n: usize) -> Range<usize> {
        let k = self.subgroups.partition_point(|s| s.index <= n);
        0..self.offsets[k]
    }

    pub fn class_of(&self, id: usize) -> usize {
        self.offsets.partition_point(|&o| o <= id) - 1
    }

    pub fn element(&self, id: usize) -> SystemElement {
        let s = self.class_of(id);
        SystemElement {
            subgroup: s,
            rep: self.cosets[s].reps[id - self.offsets[s]],
        }
    }

    pub fn id_of(&self, e: SystemElement) -> Result<usize> {
        let foreign = || Error::Contract("element does not belong to this system".into());
        let c = self.cosets.get(e.subgroup).ok_or_else(foreign)?;
        if e.rep >= c.projection.len() {
            return Err(foreign());
        }
        let k = c.coset_of(e.rep);
        if c.reps[k] != e.rep {
            return Err(foreign());
        }
        Ok(self.offsets[e.subgroup] + k)
    }

    fn coset_index(&self, id: usize) -> (usize, usize) {
        let s = self.class_of(id);
        (s, id - self.offsets[s])
    }

    pub fn subset(&self, s: usize, t: usize) -> bool {
        self.contained[s].contains(t)
    }

    /// `a ≤ b`: the subgroup of `a` lies in that of `b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.subset(self.class_of(a), self.class_of(b))
    }

    /// `C(a, b)`: `b` is the image of `a` under the quotient map.
    pub fn c(&self, a: usize, b: usize) -> bool {
        let (sa, ka) = self.coset_index(a);
        let (sb, kb) = self.coset_index(b);
        self.subset(sa, sb) && self.cosets[sb].coset_of(self.cosets[sa].reps[ka]) == kb
    }

    /// `P(a, b, c)`: one class, and `ab = c` in its quotient group.
    pub fn p(&self, a: usize, b: usize, c: usize) -> bool {
        let (sa, ka) = self.coset_index(a);
        let (sb, kb) = self.coset_index(b);
        let (sc, kc) = self.coset_index(c);
        if sa != sb || sb != sc {
            return false;
        }
        let m = &self.cosets[sa];
        m.coset_of(self.group.mul(m.reps[ka], m.reps[kb])) == kc
    }

    pub fn in_sort(&self, a: usize, n: usize) -> bool {
        self.subgroups[self.class_of(a)].index <= n
    }

    pub fn holds(&self, rel: Relation, args: &[SystemElement]) -> Result<bool> {
        let ids = args.iter().map(|&e| self.id_of(e)).collect::<Result<Vec<_>>>()?;
        let arity = match rel {
            Relation::P => 3,
            Relation::SortMem(_) => 1,
            _ => 2,
        };
        if ids.len() != arity {
            return Err(Error::Contract("wrong number of arguments".into()));
        }
        Ok(match rel {
            Relation::Leq => self.leq(ids[0], ids[1]),
            Relation::C => self.c(ids[0], ids[1]),
            Relation::P => self.p(ids[0], ids[1], ids[2]),
            Relation::Eq => ids[0] == ids[1],
            Relation::SortMem(n) => self.in_sort(ids[0], n),
        })
    }

    pub fn meet_class(&self, s: usize, t: usize) -> Option<usize> {
        self.meets[s * self.class_count() + t]
    }

    pub fn join_class(&self, s: usize, t: usize) -> Option<usize> {
        self.joins[s * self.class_count() + t]
    }

    /// `[N ∩ M]`, as its identity coset.
    pub fn class_meet(&self, s: usize, t: usize) -> Result<usize> {
        self.meet_class(s, t)
            .map(|m| self.identity_element(m))
            .ok_or_else(|| Error::Closure("meet of two classes".into()))
    }

    /// `[NM]`, as its identity coset.
    pub fn class_join(&self, s: usize, t: usize) -> Result<usize> {
        self.join_class(s, t)
            .map(|m| self.identity_element(m))
            .ok_or_else(|| Error::Closure("join of two classes".into()))
    }

    /// Meet of several classes; the empty meet is the whole group's class.
    pub fn meet_all(&self, classes: &[usize]) -> Result<usize> {
        let mut acc = self.top_class();
        for &s in classes {
            acc = self
                .meet_class(acc, s)
                .ok_or_else(|| Error::Closure("meet of several classes".into()))?;
        }
        Ok(acc)
    }

    /// The class of the whole group (index 1).
    pub fn top_class(&self) -> usize {
        0
    }

    /// The group law of a class read off `P`.
    pub fn class_group(&self, s: usize) -> TableGroup {
        let r = self.class_elements(s);
        let n = r.len();
        TableGroup::from_fn(n, |a, b| {
            r.clone()
                .find(|&c| self.p(r.start + a, r.start + b, c))
                .expect("P is total on a class")
                - r.start
        })
        .expect("class group law")
    }

    /// Rebuilds the group as the inverse limit over the classes: each element
    /// becomes its compatible family of cosets. Returns the limit as a table
    /// group when the families are compatible and separate points.
    pub fn limit_group(&self) -> Option<TableGroup> {
        let n = self.group.order();
        let k = self.class_count();
        let mut families: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for g in 0..n {
            let fam: Vec<u32> = self.cosets.iter().map(|c| c.projection[g]).collect();
            for s in 0..k {
                for t in self.contained[s].ones() {
                    let a = self.offsets[s] + fam[s] as usize;
                    let b = self.offsets[t] + fam[t] as usize;
                    if !self.c(a, b) {
                        return None;
                    }
                }
            }
            families.insert(fam, g);
        }
        if families.len() != n {
            return None;
        }
        // Multiply componentwise through P.
        let fams: Vec<&Vec<u32>> = families.keys().collect();
        let pos: BTreeMap<&Vec<u32>, usize> = fams.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        // The all-zero family sorts first, so the identity keeps code 0.
        TableGroup::from_fn(n, |a, b| {
            let (fa, fb) = (fams[a], fams[b]);
            let prod: Vec<u32> = (0..k)
                .map(|s| {
                    let c = &self.cosets[s];
                    c.projection[self.group.mul(c.reps[fa[s] as usize], c.reps[fb[s] as usize])]
                })
                .collect();
            pos[&prod]
        })
        .ok()
    }

    pub fn subsystem_from_classes(&self, classes: impl IntoIterator<Item = usize>) -> Result<Subsystem> {
        Subsystem::generate(self, classes)
    }

    /// `(S₋, S₊)`: generated by the `D_p` and `W` classes, and additionally
    /// by the `C₂` classes.
    pub fn minus_plus(&self) -> Result<(Subsystem, Subsystem)> {
        let classes = |with_c2: bool| {
            (0..self.class_count()).filter(move |&s| match self.tags[s] {
                IsoTag::Dp | IsoTag::W => true,
                IsoTag::C2 => with_c2,
                _ => false,
            })
        };
        let minus = Subsystem::generate(self, classes(false))?;
        let plus = Subsystem::generate(self, classes(true))?;
        Ok((minus, plus))
    }
}

/// A subsystem, as the set of classes it contains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subsystem {
    pub classes: FixedBitSet,
}

impl Subsystem {
    /// Least subsystem containing the given classes: close under meets, then
    /// upwards.
    pub fn generate<G: FiniteGroup>(sys: &System<G>, classes: impl IntoIterator<Item = usize>) -> Result<Self> {
        let k = sys.class_count();
        let mut set = FixedBitSet::with_capacity(k);
        set.insert(sys.top_class());
        let mut members: Vec<usize> = Vec::new();
        for s in classes {
            if !set.put(s) {
                members.push(s);
            }
        }
        let mut i = 0;
        while i < members.len() {
            for j in 0..=i {
                let m = sys
                    .meet_class(members[i], members[j])
                    .ok_or_else(|| Error::Closure("subsystem generation needs a missing meet".into()))?;
                if !set.put(m) {
                    members.push(m);
                }
            }
            i += 1;
        }
        let mut up = set.clone();
        for s in set.ones() {
            up.union_with(&sys.contained[s]);
        }
        Ok(Subsystem { classes: up })
    }

    pub fn from_elements<G: FiniteGroup>(sys: &System<G>, ids: &[usize]) -> Result<Self> {
        Self::generate(sys, ids.iter().map(|&a| sys.class_of(a)))
    }

    pub fn contains_class(&self, s: usize) -> bool {
        self.classes.contains(s)
    }

    pub fn contains_element<G: FiniteGroup>(&self, sys: &System<G>, id: usize) -> bool {
        self.classes.contains(sys.class_of(id))
    }

    pub fn class_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.ones()
    }

    pub fn len(&self) -> usize {
        self.classes.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_clear()
    }

    pub fn is_subset(&self, other: &Subsystem) -> bool {
        self.classes.is_subset(&other.classes)
    }

    pub fn join<G: FiniteGroup>(&self, sys: &System<G>, other: &Subsystem) -> Result<Subsystem> {
        Self::generate(sys, self.classes.ones().chain(other.classes.ones()))
    }

    pub fn meet(&self, other: &Subsystem) -> Subsystem {
        let mut c = self.classes.clone();
        c.intersect_with(&other.classes);
        Subsystem { classes: c }
    }

    /// Whether the class set is upward closed and closed under the meets
    /// available in the family.
    pub fn is_subsystem<G: FiniteGroup>(&self, sys: &System<G>) -> bool {
        self.classes.ones().all(|s| {
            sys.contained[s].is_subset(&self.classes)
                && self
                    .classes
                    .ones()
                    .all(|t| sys.meet_class(s, t).is_some_and(|m| self.classes.contains(m)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::find_isomorphism;
    use crate::groups::{dp_group, Params, StructuredGroup};
    use crate::subgroups::{enumerate_normal, DEFAULT_MAX_ORDER};

    fn full<G: FiniteGroup>(g: G) -> System<G> {
        let ns = enumerate_normal(&g, DEFAULT_MAX_ORDER).unwrap();
        System::build(g, 3, 5, ns).unwrap()
    }

    #[test]
    fn dihedral_system_shape() {
        let s = full(dp_group(3));
        assert_eq!(s.class_count(), 3);
        let sizes: Vec<usize> = (0..3).map(|c| s.class_elements(c).len()).collect();
        assert_eq!(sizes, vec![1, 2, 6]);
        assert_eq!(s.element_count(), 9);
        assert_eq!(s.sort_extent(2), 0..3);
        assert_eq!(s.tags(), &[IsoTag::Trivial, IsoTag::C2, IsoTag::Dp]);
        for id in 0..s.element_count() {
            assert_eq!(s.id_of(s.element(id)).unwrap(), id);
        }
    }

    #[test]
    fn relations_follow_definitions() {
        let s = full(dp_group(3));
        let a = s.element(5);
        assert!(s.holds(Relation::Leq, &[a, a]).unwrap());
        assert!(!s.holds(Relation::P, &[s.element(0), s.element(1), s.element(1)]).unwrap());
        // every element of the bottom class maps by C to exactly one coset above
        for x in s.class_elements(2) {
            assert_eq!(s.class_elements(1).filter(|&y| s.c(x, y)).count(), 1);
        }
        assert!(s.holds(Relation::Leq, &[SystemElement { subgroup: 9, rep: 0 }, a]).is_err());
    }

    #[test]
    fn lattice_and_subsystems() {
        let g = StructuredGroup::new(Params::new(3, 5, &["a", "b"], &[("a", "b")], &[]).unwrap());
        let s = full(g);
        let dp: Vec<usize> = (0..s.class_count()).filter(|&c| s.tag(c) == IsoTag::Dp).collect();
        assert_eq!(dp.len(), 2);
        let m = s.class_of(s.class_meet(dp[0], dp[1]).unwrap());
        // The meet is the normal C_q with quotient D_p x D_p; W sits below it.
        assert_eq!(s.tag(m), IsoTag::DpXDp);
        let bottom = s.class_count() - 1;
        assert!(s.subset(bottom, m));
        assert_eq!(s.tag(bottom), IsoTag::W);
        let empty = Subsystem::generate(&s, []).unwrap();
        assert_eq!(empty.class_ids().collect::<Vec<_>>(), vec![0]);
        let (minus, plus) = s.minus_plus().unwrap();
        assert_eq!(minus, plus);
        assert!(minus.is_subsystem(&s));
        let limit = s.limit_group().unwrap();
        assert!(find_isomorphism(&limit, s.group()).is_some());
    }
}
