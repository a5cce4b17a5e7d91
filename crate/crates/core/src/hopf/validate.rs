use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exactlin::SparseTensor;

use super::FinDimHopf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Associativity,
    Unit,
    Coassociativity,
    Counit,
    BialgebraCompatibility,
    Antipode,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::Associativity,
        Axiom::Unit,
        Axiom::Coassociativity,
        Axiom::Counit,
        Axiom::BialgebraCompatibility,
        Axiom::Antipode,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::Coassociativity => "coassociativity",
            Axiom::Counit => "counit",
            Axiom::BialgebraCompatibility => "bialgebra_compatibility",
            Axiom::Antipode => "antipode",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    /// First failing basis tuple in canonical order, if any.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfReport {
    pub checks: Vec<AxiomCheck>,
}

impl HopfReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| c.witness.is_some())
    }

    pub fn witness(&self, axiom: Axiom) -> Option<&[usize]> {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .and_then(|c| c.witness.as_deref())
    }
}

/// Checks every Hopf axiom exhaustively on basis tuples.
pub fn validate_hopf(h: &FinDimHopf) -> HopfReport {
    let checks = Axiom::ALL
        .iter()
        .map(|&axiom| AxiomCheck {
            axiom,
            witness: first_failure(h, axiom),
        })
        .collect();
    HopfReport { checks }
}

fn first_failure(h: &FinDimHopf, axiom: Axiom) -> Option<Vec<usize>> {
    let n = h.dim();
    let e = |i: usize| h.basis_vec(i);
    match axiom {
        Axiom::Associativity => {
            for i in 0..n {
                for j in 0..n {
                    let ij = h.mul(&e(i), &e(j));
                    for k in 0..n {
                        let jk = h.mul(&e(j), &e(k));
                        if h.mul(&ij, &e(k)) != h.mul(&e(i), &jk) {
                            return Some(vec![i, j, k]);
                        }
                    }
                }
            }
            None
        }
        Axiom::Unit => {
            let one = h.one();
            (0..n)
                .find(|&i| h.mul(&one, &e(i)) != e(i) || h.mul(&e(i), &one) != e(i))
                .map(|i| vec![i])
        }
        Axiom::Coassociativity => (0..n)
            .find(|&i| {
                let x = e(i);
                h.sweedler_expand_order(&x, &[0, 0]) != h.sweedler_expand_order(&x, &[0, 1])
            })
            .map(|i| vec![i]),
        Axiom::Counit => (0..n)
            .find(|&i| {
                let mut left = h.zero();
                let mut right = h.zero();
                for (a, b, c) in h.comult_basis(i) {
                    left[*b] += c * h.counit_basis(*a);
                    right[*a] += c * h.counit_basis(*b);
                }
                left != e(i) || right != e(i)
            })
            .map(|i| vec![i]),
        Axiom::BialgebraCompatibility => {
            let one = h.one();
            if h.comult(&one) != h.tensor2(&one, &one) || !h.counit(&one).is_one() {
                return Some(Vec::new());
            }
            for i in 0..n {
                for j in 0..n {
                    let prod = h.mul(&e(i), &e(j));
                    if h.counit(&prod) != h.counit_basis(i) * h.counit_basis(j) {
                        return Some(vec![i, j]);
                    }
                    let lhs = h.comult(&prod);
                    let rhs = tensor_mul(h, &h.comult_tensor(i), &h.comult_tensor(j));
                    if lhs != rhs {
                        return Some(vec![i, j]);
                    }
                }
            }
            None
        }
        Axiom::Antipode => (0..n)
            .find(|&i| {
                let target = h.unit_counit(&e(i));
                let mut left = h.zero();
                let mut right = h.zero();
                for (a, b, c) in h.comult_basis(i) {
                    let l = h.mul(&h.antipode(&e(*a)), &e(*b));
                    let r = h.mul(&e(*a), &h.antipode(&e(*b)));
                    for k in 0..n {
                        left[k] += c * &l[k];
                        right[k] += c * &r[k];
                    }
                }
                left != target || right != target
            })
            .map(|i| vec![i]),
    }
}

/// Product in `H⊗H` of two rank-2 tensors, factorwise.
pub fn tensor_mul(h: &FinDimHopf, s: &SparseTensor, t: &SparseTensor) -> SparseTensor {
    let mut out = SparseTensor::zero(2);
    for (a, x) in s.iter() {
        for (b, y) in t.iter() {
            let xy = x * y;
            for (p, c1) in h.mult_basis(a[0], b[0]) {
                for (q, c2) in h.mult_basis(a[1], b[1]) {
                    out.add_term(vec![*p, *q], &xy * &(c1 * c2));
                }
            }
        }
    }
    out
}
