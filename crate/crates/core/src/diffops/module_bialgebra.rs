use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::actions::{smash_product, validate_action, ActionData, ActionError};
use crate::exactlin::{zero_vec, Rat};
use crate::hopf::{same_algebra, FinDimHopf, HopfError, LinMap};

use super::{add_scaled, check_diffop, DiffError, DiffOp};

/// A verified difference module bialgebra: `K` acts on `H`, both carry difference operators.
#[derive(Clone, Debug)]
pub struct DiffModuleBialgebra {
    h: DiffOp,
    k: DiffOp,
    action: ActionData,
}

impl DiffModuleBialgebra {
    pub fn target_op(&self) -> &DiffOp {
        &self.h
    }

    pub fn acting_op(&self) -> &DiffOp {
        &self.k
    }

    pub fn action(&self) -> &ActionData {
        &self.action
    }
}

fn pure_tensor(x: &[Rat], a: &[Rat]) -> Vec<Rat> {
    x.iter()
        .flat_map(|p| a.iter().map(move |q| p * q))
        .collect()
}

/// First `(a, x)` where `D_H(a₁⇀x₁)(a₂⇀x₂) = D_K(a₁)a₂ ⇀ D_H(x₁)x₂` fails.
fn module_identity_witness(
    dh: &LinMap,
    dk: &LinMap,
    action: &ActionData,
) -> Option<(usize, usize)> {
    let (k, h) = (action.acting(), action.target());
    for a in 0..k.dim() {
        let mut ka = k.zero();
        for (i, j, c) in k.comult_basis(a) {
            add_scaled(&mut ka, c, &k.mul(&dk.image(*i), &k.basis_vec(*j)));
        }
        for x in 0..h.dim() {
            let mut lhs = h.zero();
            let mut hx = h.zero();
            for (x1, x2, c) in h.comult_basis(x) {
                add_scaled(&mut hx, c, &h.mul(&dh.image(*x1), &h.basis_vec(*x2)));
                for (a1, a2, d) in k.comult_basis(a) {
                    let l = dh.apply(action.act_basis(*a1, *x1));
                    let t = h.mul(&l, action.act_basis(*a2, *x2));
                    add_scaled(&mut lhs, &(c * d), &t);
                }
            }
            if lhs != action.act(&ka, &hx) {
                return Some((a, x));
            }
        }
    }
    None
}

fn require_cocommutative(h: &FinDimHopf) -> Result<(), DiffError> {
    if h.is_cocommutative() {
        Ok(())
    } else {
        Err(DiffError::NotCocommutative(String::from(h.name())))
    }
}

/// Verifies that `(H, D_H)` is a difference module bialgebra over `(K, D_K)`.
pub fn check_diff_module_bialgebra(
    h: &DiffOp,
    k: &DiffOp,
    action: &ActionData,
) -> Result<DiffModuleBialgebra, DiffError> {
    if !same_algebra(h.map().domain(), action.target())
        || !same_algebra(k.map().domain(), action.acting())
    {
        return Err(HopfError::DomainMismatch.into());
    }
    require_cocommutative(action.target())?;
    require_cocommutative(action.acting())?;
    let report = validate_action(action, true);
    if let Some((axiom, w)) = report.first_failure() {
        return Err(ActionError::InvalidAction {
            axiom,
            witness: w.to_vec(),
        }
        .into());
    }
    if let Some((a, x)) = module_identity_witness(h.map(), k.map(), action) {
        return Err(DiffError::IdentityFails(alloc::vec![a, x]));
    }
    Ok(DiffModuleBialgebra {
        h: h.clone(),
        k: k.clone(),
        action: action.clone(),
    })
}

#[derive(Clone, Debug)]
pub struct SmashExtension {
    pub smash: Arc<FinDimHopf>,
    pub op: DiffOp,
}

/// `D(x#a) = D_H(x₁)x₂(D_K(a₁)⇀S_H(x₃)) # D_K(a₂)` on `H#K`, verified.
pub fn extend_diff_smash(m: &DiffModuleBialgebra) -> Result<SmashExtension, DiffError> {
    let action = &m.action;
    let (k, h) = (action.acting(), action.target());
    let (dh, dk) = (m.h.map(), m.k.map());
    let smash = Arc::new(smash_product(action)?);
    let kd = k.dim();
    let n = h.dim() * kd;
    let images: Vec<Vec<Rat>> = (0..n)
        .map(|p| {
            let (x, a) = (p / kd, p % kd);
            let mut col = zero_vec(n);
            for (i, j, l, c) in h.comult2_basis(x) {
                let front = h.mul(&dh.image(*i), &h.basis_vec(*j));
                let sx = h.antipode(&h.basis_vec(*l));
                for (a1, a2, d) in k.comult_basis(a) {
                    let acted = action.act(&dk.image(*a1), &sx);
                    let t = pure_tensor(&h.mul(&front, &acted), &dk.image(*a2));
                    add_scaled(&mut col, &(c * d), &t);
                }
            }
            col
        })
        .collect();
    let map = LinMap::from_images(&smash, &images)?;
    let op = check_diffop(&map).map_err(DiffError::NotDiffop)?;
    for x in 0..h.dim() {
        if map.apply(&pure_tensor(&h.basis_vec(x), &k.one())) != pure_tensor(&dh.image(x), &k.one())
        {
            return Err(DiffError::Verification(format!(
                "restriction to H#1 differs at {}",
                h.label(x)
            )));
        }
    }
    for a in 0..kd {
        if map.apply(&pure_tensor(&h.one(), &k.basis_vec(a))) != pure_tensor(&h.one(), &dk.image(a))
        {
            return Err(DiffError::Verification(format!(
                "restriction to 1#K differs at {}",
                k.label(a)
            )));
        }
    }
    Ok(SmashExtension { smash, op })
}
