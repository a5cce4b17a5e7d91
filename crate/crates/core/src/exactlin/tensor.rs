use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec::Vec;

use super::Rat;

/// Sparse tensor over a fixed basis: multi-index to nonzero coefficient.
/// Zero coefficients are never stored, so structural equality is equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseTensor {
    rank: usize,
    terms: BTreeMap<Vec<usize>, Rat>,
}

impl SparseTensor {
    pub fn zero(rank: usize) -> Self {
        SparseTensor {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// Rank-1 tensor from a dense coordinate vector.
    pub fn from_vector(v: &[Rat]) -> Self {
        let mut t = SparseTensor::zero(1);
        for (i, c) in v.iter().enumerate() {
            t.add_term(alloc::vec![i], c.clone());
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, index: Vec<usize>, coeff: Rat) {
        debug_assert_eq!(index.len(), self.rank);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, index: &[usize]) -> Rat {
        self.terms.get(index).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Rat)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &SparseTensor) -> SparseTensor {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparseTensor) -> SparseTensor {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> SparseTensor {
        let mut out = SparseTensor::zero(self.rank);
        if c.is_zero() {
            return out;
        }
        for (k, v) in self.iter() {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }

    /// Outer product `self ⊗ other`.
    pub fn tensor(&self, other: &SparseTensor) -> SparseTensor {
        let mut out = SparseTensor::zero(self.rank + other.rank);
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                let mut k = a.clone();
                k.extend_from_slice(b);
                out.add_term(k, x * y);
            }
        }
        out
    }

    /// Replaces the leg at position `leg` using `f`, which maps a basis index
    /// to a sparse rank-`r` tensor; the result has rank `rank - 1 + r`.
    pub fn expand_leg<F>(&self, leg: usize, out_rank: usize, mut f: F) -> SparseTensor
    where
        F: FnMut(usize) -> SparseTensor,
    {
        let mut out = SparseTensor::zero(out_rank);
        for (k, c) in self.iter() {
            let img = f(k[leg]);
            for (m, d) in img.iter() {
                let mut idx = Vec::with_capacity(out_rank);
                idx.extend_from_slice(&k[..leg]);
                idx.extend_from_slice(m);
                idx.extend_from_slice(&k[leg + 1..]);
                out.add_term(idx, c * d);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn cancellation_removes_terms() {
        let mut t = SparseTensor::zero(2);
        t.add_term(vec![0, 1], Rat::one());
        t.add_term(vec![0, 1], -Rat::one());
        assert!(t.is_zero());
    }

    #[test]
    fn outer_product_rank() {
        let a = SparseTensor::from_vector(&[Rat::one(), Rat::from_int(2)]);
        let t = a.tensor(&a);
        assert_eq!(t.rank(), 2);
        assert_eq!(t.coeff(&[1, 1]), Rat::from_int(4));
    }
}
