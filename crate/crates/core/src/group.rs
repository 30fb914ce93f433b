//! Generic finite-group plumbing shared by every concrete group in the crate.
//!
//! A group is anything implementing [`FiniteGroup`]: its elements are the
//! integers `0..order()` and `0` is always the identity. Subsets are
//! [`ElementSet`] bitsets over those integers, which doubles as the canonical
//! identity of a subgroup.

use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub type ElementSet = FixedBitSet;

pub const IDENTITY: usize = 0;

pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    /// A generating set. Need not be minimal.
    fn generators(&self) -> Vec<usize>;
}

impl<G: FiniteGroup + ?Sized> FiniteGroup for &G {
    fn order(&self) -> usize {
        (**self).order()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        (**self).mul(a, b)
    }
    fn inv(&self, a: usize) -> usize {
        (**self).inv(a)
    }
    fn generators(&self) -> Vec<usize> {
        (**self).generators()
    }
}

pub fn pow<G: FiniteGroup + ?Sized>(g: &G, a: usize, mut k: u64) -> usize {
    let mut acc = IDENTITY;
    let mut base = a;
    while k > 0 {
        if k & 1 == 1 {
            acc = g.mul(acc, base);
        }
        base = g.mul(base, base);
        k >>= 1;
    }
    acc
}

pub fn element_order<G: FiniteGroup + ?Sized>(g: &G, a: usize) -> usize {
    let mut n = 1;
    let mut x = a;
    while x != IDENTITY {
        x = g.mul(x, a);
        n += 1;
    }
    n
}

/// `s⁻¹ a s`.
pub fn conjugate<G: FiniteGroup + ?Sized>(g: &G, a: usize, s: usize) -> usize {
    g.mul(g.mul(g.inv(s), a), s)
}

pub fn element_orders<G: FiniteGroup + ?Sized>(g: &G) -> Vec<usize> {
    (0..g.order()).map(|a| element_order(g, a)).collect()
}

pub fn is_abelian<G: FiniteGroup + ?Sized>(g: &G) -> bool {
    let gens = g.generators();
    gens.iter()
        .all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// A subgroup under construction: its member set, an enumeration of the
/// members in discovery order, and the generators added so far.
#[derive(Debug, Clone)]
pub struct Closure {
    pub set: ElementSet,
    pub elements: Vec<usize>,
    pub gens: Vec<usize>,
}

impl Closure {
    pub fn trivial(order: usize) -> Self {
        let mut set = ElementSet::with_capacity(order);
        set.insert(IDENTITY);
        Closure {
            set,
            elements: vec![IDENTITY],
            gens: Vec::new(),
        }
    }

    pub fn generated<G: FiniteGroup + ?Sized>(g: &G, gens: &[usize]) -> Self {
        let mut c = Closure::trivial(g.order());
        for &s in gens {
            c.extend(g, s);
        }
        c
    }

    /// Rebuilds a closure from a member set known to be a subgroup.
    pub fn from_subgroup<G: FiniteGroup + ?Sized>(g: &G, set: &ElementSet) -> Self {
        let mut c = Closure::trivial(g.order());
        for a in set.ones() {
            c.extend(g, a);
        }
        c
    }

    /// Adds `s` as a generator. Returns false if `s` was already a member.
    pub fn extend<G: FiniteGroup + ?Sized>(&mut self, g: &G, s: usize) -> bool {
        if self.set.contains(s) {
            return false;
        }
        self.gens.push(s);
        let old = self.elements.len();
        // Old members are already closed under the old generators.
        for i in 0..old {
            let y = g.mul(self.elements[i], s);
            if !self.set.put(y) {
                self.elements.push(y);
            }
        }
        let mut i = old;
        while i < self.elements.len() {
            let x = self.elements[i];
            for k in 0..self.gens.len() {
                let y = g.mul(x, self.gens[k]);
                if !self.set.put(y) {
                    self.elements.push(y);
                }
            }
            i += 1;
        }
        true
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Greedy generating set: scan elements by decreasing element order and keep
/// each one not already generated.
pub fn small_generating_set<G: FiniteGroup + ?Sized>(g: &G, orders: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..g.order()).collect();
    idx.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
    let mut c = Closure::trivial(g.order());
    for a in idx {
        if c.order() == g.order() {
            break;
        }
        c.extend(g, a);
    }
    c.gens
}

/// Canonical generators of a subgroup: the members in increasing order, kept
/// when not generated by the earlier picks.
pub fn canonical_generators<G: FiniteGroup + ?Sized>(g: &G, set: &ElementSet) -> Vec<usize> {
    let target = set.count_ones(..);
    let mut c = Closure::trivial(g.order());
    for a in set.ones() {
        if c.order() == target {
            break;
        }
        c.extend(g, a);
    }
    c.gens
}

pub fn is_subgroup<G: FiniteGroup + ?Sized>(g: &G, set: &ElementSet) -> bool {
    if !set.contains(IDENTITY) {
        return false;
    }
    let members: Vec<usize> = set.ones().collect();
    members
        .iter()
        .all(|&a| set.contains(g.inv(a)) && members.iter().all(|&b| set.contains(g.mul(a, b))))
}

pub fn is_normal<G: FiniteGroup + ?Sized>(g: &G, set: &ElementSet) -> bool {
    let gens = g.generators();
    set.ones()
        .all(|a| gens.iter().all(|&s| set.contains(conjugate(g, a, s))))
}

/// A group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableGroup {
    n: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    gens: Vec<usize>,
}

impl TableGroup {
    /// Tabulates `mul` over `0..n`, checking that `0` is a two-sided identity
    /// and every row is a permutation.
    pub fn from_fn(n: usize, mut mul: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Contract("empty group".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                if c >= n {
                    return Err(Error::Contract("product out of range".into()));
                }
                table.push(c as u32);
            }
        }
        let mut inverses = vec![u32::MAX; n];
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(Error::Contract("0 is not the identity".into()));
            }
            let mut seen = ElementSet::with_capacity(n);
            for b in 0..n {
                let c = table[a * n + b] as usize;
                if seen.put(c) {
                    return Err(Error::Contract("table row is not a permutation".into()));
                }
                if c == IDENTITY {
                    inverses[a] = b as u32;
                }
            }
        }
        let mut t = TableGroup {
            n,
            table,
            inverses,
            gens: Vec::new(),
        };
        let orders = element_orders(&t);
        t.gens = small_generating_set(&t, &orders);
        Ok(t)
    }

    pub fn from_group<G: FiniteGroup + ?Sized>(g: &G) -> Self {
        let n = g.order();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(g.mul(a, b) as u32);
            }
        }
        let inverses = (0..n).map(|a| g.inv(a) as u32).collect();
        let mut t = TableGroup {
            n,
            table,
            inverses,
            gens: Vec::new(),
        };
        let orders = element_orders(&t);
        t.gens = small_generating_set(&t, &orders);
        t
    }

    /// Verifies associativity over all triples.
    pub fn is_associative(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n).all(|b| {
                let ab = self.mul(a, b);
                (0..self.n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n).expect("cyclic group table")
    }

    /// Dihedral group of order `2n`; element `2y + x` is the rotation `y`
    /// followed by `x` reflections.
    pub fn dihedral(n: usize) -> Self {
        Self::from_fn(2 * n, |a, b| {
            let (y1, x1) = (a / 2, a % 2);
            let (y2, x2) = (b / 2, b % 2);
            let y = if x1 == 0 { (y1 + y2) % n } else { (y1 + n - y2) % n };
            2 * y + (x1 ^ x2)
        })
        .expect("dihedral group table")
    }

    pub fn elementary_abelian(rank: u32) -> Self {
        Self::from_fn(1 << rank, |a, b| a ^ b).expect("elementary abelian table")
    }

    pub fn direct_product(a: &Self, b: &Self) -> Self {
        let nb = b.n;
        Self::from_fn(a.n * nb, |x, y| {
            a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
        })
        .expect("direct product table")
    }
}

impl FiniteGroup for TableGroup {
    fn order(&self) -> usize {
        self.n
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }
    fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }
    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }
}

/// A homomorphism stored extensionally: `images[a]` is the image of `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hom {
    pub images: Vec<usize>,
    pub target_order: usize,
}

impl Hom {
    /// Extends generator images along the Cayley graph of `src`. Returns
    /// `None` when the assignment does not define a homomorphism.
    pub fn from_generator_images<A, B>(src: &A, dst: &B, gens: &[usize], imgs: &[usize]) -> Option<Hom>
    where
        A: FiniteGroup + ?Sized,
        B: FiniteGroup + ?Sized,
    {
        assert_eq!(gens.len(), imgs.len());
        let n = src.order();
        let mut images = vec![usize::MAX; n];
        images[IDENTITY] = IDENTITY;
        let mut queue = vec![IDENTITY];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            let fx = images[x];
            for (&s, &t) in gens.iter().zip(imgs) {
                let y = src.mul(x, s);
                let fy = dst.mul(fx, t);
                if images[y] == usize::MAX {
                    images[y] = fy;
                    queue.push(y);
                } else if images[y] != fy {
                    return None;
                }
            }
            i += 1;
        }
        if queue.len() != n {
            // `gens` does not generate `src`.
            return None;
        }
        Some(Hom {
            images,
            target_order: dst.order(),
        })
    }

    /// Accepts an arbitrary map after checking it against every product.
    pub fn from_images_checked<A, B>(src: &A, dst: &B, images: Vec<usize>) -> Result<Hom>
    where
        A: FiniteGroup + ?Sized,
        B: FiniteGroup + ?Sized,
    {
        let n = src.order();
        if images.len() != n || images.iter().any(|&y| y >= dst.order()) {
            return Err(Error::Contract("map has the wrong shape".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if images[src.mul(a, b)] != dst.mul(images[a], images[b]) {
                    return Err(Error::Contract("map is not multiplicative".into()));
                }
            }
        }
        Ok(Hom {
            images,
            target_order: dst.order(),
        })
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn kernel(&self) -> ElementSet {
        let mut k = ElementSet::with_capacity(self.images.len());
        for (a, &y) in self.images.iter().enumerate() {
            if y == IDENTITY {
                k.insert(a);
            }
        }
        k
    }

    pub fn image_of(&self, set: &ElementSet) -> ElementSet {
        let mut im = ElementSet::with_capacity(self.target_order);
        for a in set.ones() {
            im.insert(self.images[a]);
        }
        im
    }

    pub fn is_surjective(&self) -> bool {
        let mut im = ElementSet::with_capacity(self.target_order);
        for &y in &self.images {
            im.insert(y);
        }
        im.is_full()
    }

    pub fn is_bijective(&self) -> bool {
        self.images.len() == self.target_order && self.is_surjective()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Hom) -> Hom {
        Hom {
            images: self.images.iter().map(|&y| other.images[y]).collect(),
            target_order: other.target_order,
        }
    }

    pub fn inverse(&self) -> Option<Hom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.images.len()];
        for (a, &y) in self.images.iter().enumerate() {
            inv[y] = a;
        }
        Some(Hom {
            images: inv,
            target_order: self.images.len(),
        })
    }
}

fn order_profile(orders: &[usize]) -> Vec<usize> {
    let max = orders.iter().copied().max().unwrap_or(1);
    let mut counts = vec![0; max + 1];
    for &o in orders {
        counts[o] += 1;
    }
    counts
}

struct IsoSearch<'a, A: ?Sized, B: ?Sized> {
    a: &'a A,
    b: &'a B,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    found: Vec<Hom>,
    first_only: bool,
}

impl<A: FiniteGroup + ?Sized, B: FiniteGroup + ?Sized> IsoSearch<'_, A, B> {
    /// Partial map on `⟨gens[..=level]⟩`, or `None` if inconsistent or not
    /// injective.
    fn partial(&self, imgs: &[usize]) -> Option<(Vec<usize>, ElementSet)> {
        let n = self.a.order();
        let mut map = vec![usize::MAX; n];
        let mut used = ElementSet::with_capacity(self.b.order());
        map[IDENTITY] = IDENTITY;
        used.insert(IDENTITY);
        let mut queue = vec![IDENTITY];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (&s, &t) in self.gens.iter().zip(imgs) {
                let y = self.a.mul(x, s);
                let fy = self.b.mul(map[x], t);
                if map[y] == usize::MAX {
                    if used.put(fy) {
                        return None;
                    }
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
            i += 1;
        }
        Some((map, used))
    }

    fn run(&mut self, imgs: &mut Vec<usize>, image_set: &ElementSet) {
        let level = imgs.len();
        if level == self.gens.len() {
            let (map, _) = self.partial(imgs).expect("checked at previous level");
            self.found.push(Hom {
                images: map,
                target_order: self.b.order(),
            });
            return;
        }
        for ci in 0..self.candidates[level].len() {
            let t = self.candidates[level][ci];
            if image_set.contains(t) {
                continue;
            }
            imgs.push(t);
            if let Some((_, used)) = self.partial(imgs) {
                self.run(imgs, &used);
            }
            imgs.pop();
            if self.first_only && !self.found.is_empty() {
                return;
            }
        }
    }
}

fn iso_search<A, B>(a: &A, b: &B, first_only: bool) -> Vec<Hom>
where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    if a.order() != b.order() {
        return Vec::new();
    }
    let oa = element_orders(a);
    let ob = element_orders(b);
    if order_profile(&oa) != order_profile(&ob) {
        return Vec::new();
    }
    let gens = small_generating_set(a, &oa);
    let candidates = gens
        .iter()
        .map(|&s| (0..b.order()).filter(|&t| ob[t] == oa[s]).collect())
        .collect();
    let mut search = IsoSearch {
        a,
        b,
        gens,
        candidates,
        found: Vec::new(),
        first_only,
    };
    let mut start = ElementSet::with_capacity(b.order());
    start.insert(IDENTITY);
    search.run(&mut Vec::new(), &start);
    search.found
}

/// Backtracking search over generator images with element-order pruning.
pub fn find_isomorphism<A, B>(a: &A, b: &B) -> Option<Hom>
where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    iso_search(a, b, true).into_iter().next()
}

pub fn all_isomorphisms<A, B>(a: &A, b: &B) -> Vec<Hom>
where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    iso_search(a, b, false)
}

pub fn automorphisms<G: FiniteGroup + ?Sized>(g: &G) -> Vec<Hom> {
    iso_search(g, g, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_table_is_a_group() {
        let d5 = TableGroup::dihedral(5);
        assert!(d5.is_associative());
        assert_eq!(d5.order(), 10);
        assert!(!is_abelian(&d5));
        let orders = element_orders(&d5);
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 5);
    }

    #[test]
    fn closure_generates_expected_orders() {
        let d3 = TableGroup::dihedral(3);
        // rotation (y=1, x=0) is element 2
        assert_eq!(Closure::generated(&d3, &[2]).order(), 3);
        assert_eq!(Closure::generated(&d3, &[2, 1]).order(), 6);
        assert_eq!(Closure::generated(&d3, &[]).order(), 1);
    }

    #[test]
    fn hom_from_generator_images_rejects_non_homs() {
        let c4 = TableGroup::cyclic(4);
        let c2 = TableGroup::cyclic(2);
        let red = Hom::from_generator_images(&c4, &c2, &[1], &[1]).unwrap();
        assert_eq!(red.images, vec![0, 1, 0, 1]);
        let c3 = TableGroup::cyclic(3);
        assert!(Hom::from_generator_images(&c4, &c3, &[1], &[1]).is_none());
    }

    #[test]
    fn isomorphism_search() {
        let c2 = TableGroup::cyclic(2);
        let c3 = TableGroup::cyclic(3);
        let c6 = TableGroup::cyclic(6);
        let d3 = TableGroup::dihedral(3);
        assert!(find_isomorphism(&TableGroup::direct_product(&c2, &c3), &c6).is_some());
        assert!(find_isomorphism(&c6, &d3).is_none());
        assert_eq!(automorphisms(&d3).len(), 6);
        assert_eq!(automorphisms(&c6).len(), 2);
        let v4 = TableGroup::elementary_abelian(2);
        assert_eq!(automorphisms(&v4).len(), 6);
    }

    #[test]
    fn from_fn_rejects_non_groups() {
        assert!(TableGroup::from_fn(3, |a, b| (a * b) % 3).is_err());
    }
}
