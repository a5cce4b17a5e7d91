//! Difference operators on Hopf algebras.

mod ckmm;
mod module_bialgebra;
mod monoid;

use alloc::vec::Vec;

pub use ckmm::{ckmm_instance_check, group_of_grouplikes, CkmmReport};
pub use module_bialgebra::{
    check_diff_module_bialgebra, extend_diff_smash, DiffModuleBialgebra, SmashExtension,
};
pub use monoid::{conjugate, rota_baxter_inverse, rota_baxter_witness, star, RotaBaxter};

use crate::actions::ActionError;
use crate::exactlin::Rat;
use crate::hopf::{convolve, HopfError, LinMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiffError {
    #[error("{0}")]
    NotDiffop(DiffFailure),
    #[error("`{0}` is not cocommutative")]
    NotCocommutative(alloc::string::String),
    #[error("operator is singular")]
    Singular,
    #[error("map is not a Hopf automorphism")]
    NotAutomorphism,
    #[error("the two defining formulas of ⋆ disagree at basis element {0}")]
    StarFormulasDisagree(usize),
    #[error("identity fails at {0:?}")]
    IdentityFails(Vec<usize>),
    #[error("verification failed: {0}")]
    Verification(alloc::string::String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// Why a map failed to be a difference operator.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiffFailure {
    #[error("not an endomorphism of a single algebra")]
    NotEndo,
    #[error("not a coalgebra homomorphism at basis element {0}")]
    NotCoalgebraHom(usize),
    #[error("difference identity fails at basis pair ({0}, {1})")]
    Identity(usize, usize),
}

/// A verified difference operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    map: LinMap,
    bijective: bool,
}

impl DiffOp {
    pub fn map(&self) -> &LinMap {
        &self.map
    }

    pub fn into_map(self) -> LinMap {
        self.map
    }

    pub fn is_bijective(&self) -> bool {
        self.bijective
    }
}

fn add_scaled(out: &mut [Rat], c: &Rat, v: &[Rat]) {
    for (o, x) in out.iter_mut().zip(v) {
        if !x.is_zero() {
            *o += c * x;
        }
    }
}

/// First pair where `D(xy) = D(x₁)x₂D(y)S(x₃)` fails. Does not check the coalgebra property.
pub fn diffop_identity_witness(d: &LinMap) -> Option<(usize, usize)> {
    let h = d.domain();
    let n = h.dim();
    let images: Vec<Vec<Rat>> = (0..n).map(|i| d.image(i)).collect();
    let antipodes: Vec<Vec<Rat>> = (0..n).map(|k| h.antipode(&h.basis_vec(k))).collect();
    for x in 0..n {
        // Σ D(x₁)x₂ grouped by the index of x₃.
        let mut left: Vec<Option<Vec<Rat>>> = alloc::vec![None; n];
        for (i, j, k, c) in h.comult2_basis(x) {
            let t = h.mul(&images[*i], &h.basis_vec(*j));
            let slot = left[*k].get_or_insert_with(|| h.zero());
            add_scaled(slot, c, &t);
        }
        for y in 0..n {
            let lhs = d.apply(&h.mul(&h.basis_vec(x), &h.basis_vec(y)));
            let mut rhs = h.zero();
            for (k, l) in left.iter().enumerate() {
                if let Some(l) = l {
                    let t = h.mul(&h.mul(l, &images[y]), &antipodes[k]);
                    add_scaled(&mut rhs, &Rat::one(), &t);
                }
            }
            if lhs != rhs {
                return Some((x, y));
            }
        }
    }
    None
}

/// Verifies the coalgebra property and the difference identity exhaustively.
pub fn check_diffop(d: &LinMap) -> Result<DiffOp, DiffFailure> {
    if !d.is_endo() {
        return Err(DiffFailure::NotEndo);
    }
    if let Some(w) = d.coalgebra_hom_witness() {
        return Err(DiffFailure::NotCoalgebraHom(w));
    }
    if let Some((x, y)) = diffop_identity_witness(d) {
        return Err(DiffFailure::Identity(x, y));
    }
    Ok(DiffOp {
        bijective: d.is_bijective(),
        map: d.clone(),
    })
}

/// First pair where `D(x₁y)x₂ = D(x₁)x₂D(y)` fails.
pub fn diffop_prime_witness(d: &LinMap) -> Option<(usize, usize)> {
    let h = d.domain();
    let n = h.dim();
    let images: Vec<Vec<Rat>> = (0..n).map(|i| d.image(i)).collect();
    for x in 0..n {
        let mut left = h.zero();
        for (i, j, c) in h.comult_basis(x) {
            add_scaled(&mut left, c, &h.mul(&images[*i], &h.basis_vec(*j)));
        }
        for y in 0..n {
            let mut lhs = h.zero();
            for (i, j, c) in h.comult_basis(x) {
                let t = h.mul(
                    &d.apply(&h.mul(&h.basis_vec(*i), &h.basis_vec(y))),
                    &h.basis_vec(*j),
                );
                add_scaled(&mut lhs, c, &t);
            }
            if lhs != h.mul(&left, &images[y]) {
                return Some((x, y));
            }
        }
    }
    None
}

/// The primed identity; the caller is responsible for the coalgebra property.
pub fn check_diffop_prime(d: &LinMap) -> bool {
    d.is_endo() && diffop_prime_witness(d).is_none()
}

/// `F = D∗id`.
pub fn diff_to_endo(d: &LinMap) -> Result<LinMap, HopfError> {
    convolve(d, &LinMap::identity(d.domain()))
}

/// `D = F∗S`.
pub fn endo_to_diff(f: &LinMap) -> Result<LinMap, HopfError> {
    convolve(f, &LinMap::antipode(f.domain()))
}
