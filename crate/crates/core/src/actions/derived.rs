use alloc::vec::Vec;

use crate::hopf::{grouplikes, primitives, LinMap};

use super::{
    add_scaled, check_crossed_hom, crossed_hom_witness, require_cocommutative, validate_action,
    ActionData, ActionError, CrossedHom,
};

#[derive(Clone, Debug)]
pub struct DerivedAction {
    /// `a ⇀π x = ad_{π(a₁)}(a₂⇀x)`.
    pub action: ActionData,
    /// `S∘π`, a crossed homomorphism for the derived action.
    pub derived: CrossedHom,
    /// Number of group-like and primitive elements of `K` on which the
    /// restriction formulas were checked.
    pub grouplikes_checked: usize,
    pub primitives_checked: usize,
}

/// Derived action of a crossed homomorphism with cocommutative domain, verified
/// as a module-bialgebra action together with its derived crossed homomorphism and
/// the restriction formulas on group-likes and primitives.
pub fn derived_action(c: &CrossedHom) -> Result<DerivedAction, ActionError> {
    let (pi, a) = (c.map(), c.action());
    let (k, h) = (a.acting(), a.target());
    require_cocommutative(k)?;
    let images: Vec<_> = (0..k.dim()).map(|i| pi.image(i)).collect();
    let n = h.dim();
    let tensor = (0..k.dim() * n)
        .map(|idx| {
            let (p, x) = (idx / n, idx % n);
            let mut v = h.zero();
            for (i, j, cf) in k.comult_basis(p) {
                add_scaled(&mut v, cf, &h.adjoint(&images[*i], a.act_basis(*j, x)));
            }
            v
        })
        .collect();
    let action = ActionData::new(k.clone(), h.clone(), tensor)?;
    if let Some((axiom, w)) = validate_action(&action, true).first_failure() {
        return Err(ActionError::Verification(alloc::format!(
            "derived action fails {axiom} at {w:?}"
        )));
    }
    let s_pi = LinMap::antipode(h).compose(pi)?;
    if !check_crossed_hom(&s_pi, &action)? {
        let w = crossed_hom_witness(&s_pi, &action).expect("witness");
        return Err(ActionError::Verification(alloc::format!(
            "S∘π is not a crossed homomorphism for the derived action at {w:?}"
        )));
    }

    let gl = grouplikes(k)?;
    for &g in &gl.indices {
        let pg = &images[g];
        let pg_inv = h.antipode(pg);
        for x in 0..n {
            let expected = h.mul_many(&[pg, a.act_basis(g, x), &pg_inv]);
            if action.act_basis(g, x) != expected.as_slice() {
                return Err(ActionError::Verification(alloc::format!(
                    "group-like restriction fails at ({}, {})",
                    k.label(g),
                    h.label(x)
                )));
            }
        }
    }
    let prims = primitives(k.as_ref());
    for (pi_idx, p) in prims.iter().enumerate() {
        let pp = pi.apply(p);
        for x in 0..n {
            let xv = h.basis_vec(x);
            let mut expected = h.mul(&pp, &xv);
            add_scaled(
                &mut expected,
                &-crate::exactlin::Rat::one(),
                &h.mul(&xv, &pp),
            );
            add_scaled(&mut expected, &crate::exactlin::Rat::one(), &a.act(p, &xv));
            if action.act(p, &xv) != expected {
                return Err(ActionError::Verification(alloc::format!(
                    "primitive restriction fails at (primitive #{pi_idx}, {})",
                    h.label(x)
                )));
            }
        }
    }
    Ok(DerivedAction {
        derived: CrossedHom::verify(s_pi, action.clone())?,
        action,
        grouplikes_checked: gl.indices.len(),
        primitives_checked: prims.len(),
    })
}
