use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::exactlin::{Mat, Rat, SparseTensor};

use super::{FinDimHopf, HopfError};

/// The coalgebra data needed to solve for (skew-)primitive elements.
pub trait Coalgebra {
    fn coalgebra_dim(&self) -> usize;
    /// Δ of the basis element `i` as `(left, right, coefficient)` triples.
    fn comult_terms(&self, i: usize) -> Vec<(usize, usize, Rat)>;
    fn counit_of(&self, i: usize) -> Rat;
    fn unit_element(&self) -> Vec<Rat>;
}

impl Coalgebra for FinDimHopf {
    fn coalgebra_dim(&self) -> usize {
        self.dim()
    }

    fn comult_terms(&self, i: usize) -> Vec<(usize, usize, Rat)> {
        self.comult_basis(i).to_vec()
    }

    fn counit_of(&self, i: usize) -> Rat {
        self.counit_basis(i).clone()
    }

    fn unit_element(&self) -> Vec<Rat> {
        self.one()
    }
}

fn comult_vec<C: Coalgebra + ?Sized>(c: &C, v: &[Rat]) -> SparseTensor {
    let mut t = SparseTensor::zero(2);
    for (k, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (i, j, a) in c.comult_terms(k) {
            t.add_term(alloc::vec![i, j], x * &a);
        }
    }
    t
}

/// `Δ(c) = c⊗c` and `ε(c) = 1`.
pub fn is_grouplike<C: Coalgebra + ?Sized>(h: &C, c: &[Rat]) -> bool {
    let eps: Rat = c
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| x * &h.counit_of(i))
        .sum();
    if !eps.is_one() {
        return false;
    }
    let cc = SparseTensor::from_vector(c).tensor(&SparseTensor::from_vector(c));
    comult_vec(h, c) == cc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLikes {
    /// Basis indices of the group-like basis elements found.
    pub indices: Vec<usize>,
    pub elements: Vec<Vec<Rat>>,
    /// True when backed by a verified declared coradical.
    pub complete: bool,
}

/// Group-like elements. Complete only when the algebra declares its coradical.
pub fn grouplikes(h: &FinDimHopf) -> Result<GroupLikes, HopfError> {
    match h.coradical_group_basis() {
        Some(decl) => {
            for &i in decl {
                if !is_grouplike(h, &h.basis_vec(i)) {
                    return Err(HopfError::NotGrouplike(h.label(i).to_string()));
                }
            }
            for &i in decl {
                let inv = h.antipode(&h.basis_vec(i));
                if !decl.iter().any(|&j| h.basis_vec(j) == inv) {
                    return Err(HopfError::CoradicalNotClosed(
                        h.label(i).to_string(),
                        h.label(i).to_string(),
                    ));
                }
                for &j in decl {
                    let p = h.mul(&h.basis_vec(i), &h.basis_vec(j));
                    if !decl.iter().any(|&k| h.basis_vec(k) == p) {
                        return Err(HopfError::CoradicalNotClosed(
                            h.label(i).to_string(),
                            h.label(j).to_string(),
                        ));
                    }
                }
            }
            Ok(GroupLikes {
                indices: decl.to_vec(),
                elements: decl.iter().map(|&i| h.basis_vec(i)).collect(),
                complete: true,
            })
        }
        None => {
            let indices: Vec<usize> = (0..h.dim())
                .filter(|&i| is_grouplike(h, &h.basis_vec(i)))
                .collect();
            Ok(GroupLikes {
                elements: indices.iter().map(|&i| h.basis_vec(i)).collect(),
                indices,
                complete: false,
            })
        }
    }
}

/// Reduced echelon basis of `{c : Δ(c) = c⊗g + h⊗c}`.
pub fn skew_primitives<C: Coalgebra + ?Sized>(
    coalg: &C,
    g: &[Rat],
    h: &[Rat],
) -> Result<Vec<Vec<Rat>>, HopfError> {
    if !is_grouplike(coalg, g) {
        return Err(HopfError::NotGrouplike("g".to_string()));
    }
    if !is_grouplike(coalg, h) {
        return Err(HopfError::NotGrouplike("h".to_string()));
    }
    let n = coalg.coalgebra_dim();
    let gt = SparseTensor::from_vector(g);
    let ht = SparseTensor::from_vector(h);
    // Column i: Δ(e_i) − e_i⊗g − h⊗e_i, collected sparsely by tensor index.
    let mut rows: BTreeMap<Vec<usize>, Vec<(usize, Rat)>> = BTreeMap::new();
    for i in 0..n {
        let ei_dense = crate::exactlin::unit_vec(n, i);
        let ei = SparseTensor::from_vector(&ei_dense);
        let col = comult_vec(coalg, &ei_dense)
            .sub(&ei.tensor(&gt))
            .sub(&ht.tensor(&ei));
        for (ix, c) in col.iter() {
            rows.entry(ix.clone()).or_default().push((i, c.clone()));
        }
    }
    let mut a = Mat::zeros(rows.len(), n);
    for (r, entries) in rows.values().enumerate() {
        for (i, c) in entries {
            a[(r, *i)] = c.clone();
        }
    }
    Ok(Mat::span_basis(n, &a.kernel()))
}

/// Reduced echelon basis of the primitive subspace `P_{1,1}`.
pub fn primitives<C: Coalgebra + ?Sized>(coalg: &C) -> Vec<Vec<Rat>> {
    let one = coalg.unit_element();
    skew_primitives(coalg, &one, &one).expect("the unit is group-like")
}
