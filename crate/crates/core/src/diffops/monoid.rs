use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::Rat;
use crate::hopf::{convolve, LinMap};

use super::{add_scaled, check_diffop, diff_to_endo, DiffError, DiffOp};

fn require_cocommutative(d: &LinMap) -> Result<(), DiffError> {
    if d.domain().is_cocommutative() {
        Ok(())
    } else {
        Err(DiffError::NotCocommutative(String::from(d.domain().name())))
    }
}

/// `D⋆D' = ((D∗id)∘D')∗D = (D∘(D'∗id))∗D'`; both formulas are computed and must agree.
pub fn star(d: &DiffOp, e: &DiffOp) -> Result<DiffOp, DiffError> {
    let (d, e) = (d.map(), e.map());
    require_cocommutative(d)?;
    let first = convolve(&diff_to_endo(d)?.compose(e)?, d)?;
    let second = convolve(&d.compose(&diff_to_endo(e)?)?, e)?;
    if first != second {
        let col = (0..first.domain().dim())
            .find(|&i| first.image(i) != second.image(i))
            .expect("maps differ somewhere");
        return Err(DiffError::StarFormulasDisagree(col));
    }
    check_diffop(&first).map_err(DiffError::NotDiffop)
}

/// `σ∘D∘σ⁻¹` for a Hopf automorphism `σ`.
pub fn conjugate(sigma: &LinMap, d: &DiffOp) -> Result<DiffOp, DiffError> {
    if !sigma.is_hopf_automorphism() {
        return Err(DiffError::NotAutomorphism);
    }
    let inv = sigma.inverse().ok_or(DiffError::NotAutomorphism)?;
    let c = sigma.compose(d.map())?.compose(&inv)?;
    check_diffop(&c).map_err(DiffError::NotDiffop)
}

#[derive(Clone, Debug)]
pub struct RotaBaxter {
    pub operator: LinMap,
    /// `invert(B)`, re-verified as a difference operator.
    pub round_trip: DiffOp,
}

/// First pair where `B(x)B(y) = B(x₁B(x₂)yS(B(x₃)))` fails.
pub fn rota_baxter_witness(b: &LinMap) -> Option<(usize, usize)> {
    let h = b.domain();
    let n = h.dim();
    let images: Vec<Vec<Rat>> = (0..n).map(|i| b.image(i)).collect();
    let s_images: Vec<Vec<Rat>> = images.iter().map(|v| h.antipode(v)).collect();
    for x in 0..n {
        for y in 0..n {
            let lhs = h.mul(&images[x], &images[y]);
            let mut inner = h.zero();
            for (i, j, k, c) in h.comult2_basis(x) {
                let t = h.mul_many(&[
                    &h.basis_vec(*i),
                    &images[*j],
                    &h.basis_vec(y),
                    &s_images[*k],
                ]);
                add_scaled(&mut inner, c, &t);
            }
            if lhs != b.apply(&inner) {
                return Some((x, y));
            }
        }
    }
    None
}

/// `B = D⁻¹`, verified as a Rota–Baxter operator, with the round trip back to `D`.
pub fn rota_baxter_inverse(d: &DiffOp) -> Result<RotaBaxter, DiffError> {
    require_cocommutative(d.map())?;
    let b = d.map().inverse().ok_or(DiffError::Singular)?;
    if !b.is_coalgebra_hom() {
        return Err(DiffError::Verification(
            "inverse is not a coalgebra map".into(),
        ));
    }
    if let Some((x, y)) = rota_baxter_witness(&b) {
        return Err(DiffError::IdentityFails(vec![x, y]));
    }
    let back = b.inverse().ok_or(DiffError::Singular)?;
    let round_trip = check_diffop(&back).map_err(DiffError::NotDiffop)?;
    if round_trip.map() != d.map() {
        return Err(DiffError::Verification("invert(B) differs from D".into()));
    }
    Ok(RotaBaxter {
        operator: b,
        round_trip,
    })
}
