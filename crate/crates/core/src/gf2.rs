//! Vectors over GF(2) and the little elimination routine the width code needs.

use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    bits: FixedBitSet,
}

impl F2Vector {
    pub fn zero(len: usize) -> Self {
        F2Vector {
            bits: FixedBitSet::with_capacity(len),
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zero(len);
        v.bits.insert(i);
        v
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zero(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.bits.set(i, b);
        }
        v
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zero(len);
        for &i in support {
            v.bits.insert(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.len() == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn set(&mut self, i: usize, b: bool) {
        self.bits.set(i, b);
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn add_assign(&mut self, other: &F2Vector) {
        self.bits.symmetric_difference_with(&other.bits);
    }

    pub fn add(&self, other: &F2Vector) -> F2Vector {
        let mut v = self.clone();
        v.add_assign(other);
        v
    }

    /// Standard dot product.
    pub fn dot(&self, other: &F2Vector) -> bool {
        self.bits.intersection_count(&other.bits) % 2 == 1
    }

    pub fn support(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.bits.ones().next()
    }
}

/// Rank by Gaussian elimination.
pub fn rank(vectors: &[F2Vector]) -> usize {
    echelon(vectors).len()
}

fn echelon(vectors: &[F2Vector]) -> Vec<F2Vector> {
    let mut basis: Vec<F2Vector> = Vec::new();
    for v in vectors {
        if let Some(r) = reduce(&basis, v) {
            basis.push(r);
        }
    }
    basis
}

pub fn independent(vectors: &[F2Vector]) -> bool {
    rank(vectors) == vectors.len()
}

/// Reduces `v` against an echelon basis whose pivots are the first ones of
/// its members, returning the nonzero remainder if `v` is outside the span.
fn reduce(basis: &[F2Vector], v: &F2Vector) -> Option<F2Vector> {
    let mut r = v.clone();
    loop {
        let pivot = r.first_one()?;
        match basis.iter().find(|b| b.first_one() == Some(pivot)) {
            Some(b) => r.add_assign(b),
            None => return Some(r),
        }
    }
}

pub fn in_span(vectors: &[F2Vector], v: &F2Vector) -> bool {
    reduce(&echelon(vectors), v).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_dependent_triple() {
        let a = F2Vector::unit(3, 0);
        let b = F2Vector::unit(3, 1);
        let ab = a.add(&b);
        assert_eq!(rank(&[a.clone(), b.clone(), ab.clone()]), 2);
        assert!(independent(&[a.clone(), b.clone()]));
        assert!(in_span(&[a, b], &ab));
        assert!(!independent(&[F2Vector::zero(3)]));
    }
}
