use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::Rat;
use crate::hopf::{convolve, same_algebra, HopfError, LinMap};

use super::{add_scaled, require_valid, ActionData, ActionError};

/// First basis pair where `π(ab) = π(a₁)(a₂⇀π(b))` fails. No precondition checks.
pub fn crossed_hom_witness(pi: &LinMap, a: &ActionData) -> Option<(usize, usize)> {
    let (k, h) = (a.acting(), a.target());
    let images: Vec<Vec<Rat>> = (0..k.dim()).map(|i| pi.image(i)).collect();
    for p in 0..k.dim() {
        for q in 0..k.dim() {
            let lhs = pi.apply(&k.mul(&k.basis_vec(p), &k.basis_vec(q)));
            let mut rhs = h.zero();
            for (i, j, c) in k.comult_basis(p) {
                let t = h.mul(&images[*i], &a.act(&k.basis_vec(*j), &images[q]));
                add_scaled(&mut rhs, c, &t);
            }
            if lhs != rhs {
                return Some((p, q));
            }
        }
    }
    None
}

fn check_maps(pi: &LinMap, a: &ActionData) -> Result<(), ActionError> {
    if !same_algebra(pi.domain(), a.acting()) || !same_algebra(pi.codomain(), a.target()) {
        return Err(HopfError::DomainMismatch.into());
    }
    Ok(())
}

/// Checks the module-algebra precondition, the coalgebra precondition, then the identity.
pub fn check_crossed_hom(pi: &LinMap, a: &ActionData) -> Result<bool, ActionError> {
    check_maps(pi, a)?;
    require_valid(a, false)?;
    if let Some(w) = pi.coalgebra_hom_witness() {
        return Err(ActionError::NotCoalgebraHom(w));
    }
    Ok(crossed_hom_witness(pi, a).is_none())
}

/// A crossed homomorphism that has passed `check_crossed_hom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedHom {
    map: LinMap,
    action: ActionData,
}

impl CrossedHom {
    pub fn verify(map: LinMap, action: ActionData) -> Result<Self, ActionError> {
        if !check_crossed_hom(&map, &action)? {
            let w = crossed_hom_witness(&map, &action).expect("failed check has a witness");
            return Err(ActionError::NotCrossedHom(w));
        }
        Ok(CrossedHom { map, action })
    }

    pub fn map(&self) -> &LinMap {
        &self.map
    }

    pub fn action(&self) -> &ActionData {
        &self.action
    }
}

/// The four identities: `π(1) = 1`, `Sπ(a) = a₁⇀πS(a₂)`, `πS(a) = S(a₁)⇀Sπ(a₂)`,
/// and `Sπ` is the convolution inverse of `π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedHomProperties {
    pub preserves_unit: bool,
    /// First failing basis element, if any.
    pub antipode_left: Option<usize>,
    pub antipode_right: Option<usize>,
    pub convolution_inverse: bool,
}

impl CrossedHomProperties {
    pub fn all_hold(&self) -> bool {
        self.preserves_unit
            && self.antipode_left.is_none()
            && self.antipode_right.is_none()
            && self.convolution_inverse
    }
}

pub fn crossed_hom_properties(c: &CrossedHom) -> Result<CrossedHomProperties, ActionError> {
    let (pi, a) = (&c.map, &c.action);
    let (k, h) = (a.acting(), a.target());
    let s_pi = LinMap::antipode(h).compose(pi)?;
    let pi_s = pi.compose(&LinMap::antipode(k))?;

    let preserves_unit = pi.apply(&k.one()) == h.one();
    let antipode_left = (0..k.dim()).find(|&p| {
        let mut rhs = h.zero();
        for (i, j, c) in k.comult_basis(p) {
            add_scaled(&mut rhs, c, &a.act(&k.basis_vec(*i), &pi_s.image(*j)));
        }
        s_pi.image(p) != rhs
    });
    let antipode_right = (0..k.dim()).find(|&p| {
        let mut rhs = h.zero();
        for (i, j, c) in k.comult_basis(p) {
            let si = k.antipode(&k.basis_vec(*i));
            add_scaled(&mut rhs, c, &a.act(&si, &s_pi.image(*j)));
        }
        pi_s.image(p) != rhs
    });
    let ue = LinMap::unit_counit(k, h);
    let convolution_inverse = convolve(pi, &s_pi)? == ue && convolve(&s_pi, pi)? == ue;
    Ok(CrossedHomProperties {
        preserves_unit,
        antipode_left,
        antipode_right,
        convolution_inverse,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedModuleReport {
    /// First `(a, b, x)` where `(ab)·x = a·(b·x)` fails, or `[x]` for `1·x = x`.
    pub witness: Option<Vec<usize>>,
}

impl DerivedModuleReport {
    pub fn is_module(&self) -> bool {
        self.witness.is_none()
    }
}

/// Tests whether `a ·π x = π(a₁)(a₂⇀x)` is a `K`-module structure on `H`.
pub fn derived_module_structure(
    pi: &LinMap,
    a: &ActionData,
) -> Result<DerivedModuleReport, ActionError> {
    check_maps(pi, a)?;
    let (k, h) = (a.acting(), a.target());
    let images: Vec<Vec<Rat>> = (0..k.dim()).map(|i| pi.image(i)).collect();
    let dot = |p: &[Rat], x: &[Rat]| -> Vec<Rat> {
        let mut out = h.zero();
        for (q, cq) in p.iter().enumerate() {
            if cq.is_zero() {
                continue;
            }
            for (i, j, c) in k.comult_basis(q) {
                let t = h.mul(&images[*i], &a.act(&k.basis_vec(*j), x));
                add_scaled(&mut out, &(c * cq), &t);
            }
        }
        out
    };
    for x in 0..h.dim() {
        if dot(&k.one(), &h.basis_vec(x)) != h.basis_vec(x) {
            return Ok(DerivedModuleReport {
                witness: Some(vec![x]),
            });
        }
    }
    for p in 0..k.dim() {
        for q in 0..k.dim() {
            let pq = k.mul(&k.basis_vec(p), &k.basis_vec(q));
            for x in 0..h.dim() {
                let xv = h.basis_vec(x);
                if dot(&pq, &xv) != dot(&k.basis_vec(p), &dot(&k.basis_vec(q), &xv)) {
                    return Ok(DerivedModuleReport {
                        witness: Some(vec![p, q, x]),
                    });
                }
            }
        }
    }
    Ok(DerivedModuleReport { witness: None })
}
