use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{FinGroup, GroupError, GroupMap};

/// An action of `G` on `H` by automorphisms, `phi[g][h] = Φ(g)(h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    acting: Arc<FinGroup>,
    target: Arc<FinGroup>,
    phi: Vec<Vec<usize>>,
}

impl GroupAction {
    /// Validates that each `Φ(g)` is an automorphism and `Φ` is a homomorphism.
    pub fn new(
        acting: Arc<FinGroup>,
        target: Arc<FinGroup>,
        phi: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        let (m, n) = (acting.order(), target.order());
        if phi.len() != m || phi.iter().any(|r| r.len() != n) {
            return Err(GroupError::InvalidAction(format!("table must be {m}x{n}")));
        }
        if phi.iter().flatten().any(|&x| x >= n) {
            return Err(GroupError::InvalidAction("image out of range".into()));
        }
        let act = GroupAction {
            acting,
            target,
            phi,
        };
        if let Some(msg) = act.axiom_failure() {
            return Err(GroupError::InvalidAction(msg));
        }
        Ok(act)
    }

    fn axiom_failure(&self) -> Option<alloc::string::String> {
        let (g, h) = (&self.acting, &self.target);
        for a in 0..g.order() {
            let f = GroupMap {
                source: h.clone(),
                target: h.clone(),
                images: self.phi[a].clone(),
            };
            if !f.is_bijective() || !f.is_group_hom() {
                return Some(format!("Φ({}) is not an automorphism", g.label(a)));
            }
        }
        if (0..h.order()).any(|x| self.phi[g.identity()][x] != x) {
            return Some("Φ(e) is not the identity".into());
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                if (0..h.order()).any(|x| self.phi[ab][x] != self.phi[a][self.phi[b][x]]) {
                    return Some(format!(
                        "Φ({}{}) ≠ Φ({})Φ({})",
                        g.label(a),
                        g.label(b),
                        g.label(a),
                        g.label(b)
                    ));
                }
            }
        }
        None
    }

    pub fn trivial(acting: &Arc<FinGroup>, target: &Arc<FinGroup>) -> Self {
        let phi = (0..acting.order())
            .map(|_| (0..target.order()).collect())
            .collect();
        GroupAction {
            acting: acting.clone(),
            target: target.clone(),
            phi,
        }
    }

    /// Conjugation `Φ(g)(h) = g h g⁻¹`.
    pub fn adjoint(g: &Arc<FinGroup>) -> Self {
        let phi = (0..g.order())
            .map(|a| {
                (0..g.order())
                    .map(|x| g.mul_all(&[a, x, g.inv(a)]))
                    .collect()
            })
            .collect();
        GroupAction {
            acting: g.clone(),
            target: g.clone(),
            phi,
        }
    }

    pub fn acting(&self) -> &Arc<FinGroup> {
        &self.acting
    }

    pub fn target(&self) -> &Arc<FinGroup> {
        &self.target
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.phi
    }

    pub fn apply(&self, g: usize, h: usize) -> usize {
        self.phi[g][h]
    }
}

/// First pair where `D(gh) = D(g)Φ(g)(D(h))` fails.
pub fn crossed_hom_witness(d: &GroupMap, action: &GroupAction) -> Option<(usize, usize)> {
    let (g, h) = (&action.acting, &action.target);
    for a in 0..g.order() {
        for b in 0..g.order() {
            let rhs = h.mul(d.apply(a), action.apply(a, d.apply(b)));
            if d.apply(g.mul(a, b)) != rhs {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn check_group_crossed_hom(d: &GroupMap, action: &GroupAction) -> Result<bool, GroupError> {
    if *d.source != **action.acting() || *d.target != **action.target() {
        return Err(GroupError::Precondition(
            "map and action disagree on groups".into(),
        ));
    }
    Ok(crossed_hom_witness(d, action).is_none())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedGroupAction {
    /// `Φ_D(g)(h) = D(g)Φ(g)(h)D(g)⁻¹`.
    pub action: GroupAction,
    /// `D̄(g) = D(g)⁻¹`, a crossed homomorphism for `Φ_D`.
    pub derived: GroupMap,
}

/// Derived action and derived crossed homomorphism, both verified exhaustively.
pub fn derived_group_action(
    d: &GroupMap,
    action: &GroupAction,
) -> Result<DerivedGroupAction, GroupError> {
    if !check_group_crossed_hom(d, action)? {
        let (a, b) = crossed_hom_witness(d, action).expect("failed check has a witness");
        return Err(GroupError::Precondition(format!(
            "not a crossed homomorphism at ({}, {})",
            action.acting.label(a),
            action.acting.label(b)
        )));
    }
    let (g, h) = (&action.acting, &action.target);
    let phi = (0..g.order())
        .map(|a| {
            let da = d.apply(a);
            (0..h.order())
                .map(|x| h.mul_all(&[da, action.apply(a, x), h.inv(da)]))
                .collect()
        })
        .collect();
    let derived_action = GroupAction::new(g.clone(), h.clone(), phi)?;
    let dbar = GroupMap {
        source: g.clone(),
        target: h.clone(),
        images: (0..g.order()).map(|a| h.inv(d.apply(a))).collect(),
    };
    if let Some((a, b)) = crossed_hom_witness(&dbar, &derived_action) {
        return Err(GroupError::Precondition(format!(
            "derived map fails at ({}, {})",
            g.label(a),
            g.label(b)
        )));
    }
    Ok(DerivedGroupAction {
        action: derived_action,
        derived: dbar,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn inversion_action_crossed_hom() {
        let c2 = Arc::new(FinGroup::cyclic(2, "s"));
        let c4 = Arc::new(FinGroup::cyclic(4, "r"));
        let inv = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]];
        let act = GroupAction::new(c2.clone(), c4.clone(), inv).unwrap();
        let d = GroupMap::new(c2, c4, vec![0, 1]).unwrap();
        assert!(check_group_crossed_hom(&d, &act).unwrap());
        let der = derived_group_action(&d, &act).unwrap();
        assert_eq!(der.derived.images, vec![0, 3]);
    }

    #[test]
    fn invalid_action_rejected() {
        let c2 = Arc::new(FinGroup::cyclic(2, "s"));
        let c4 = Arc::new(FinGroup::cyclic(4, "r"));
        // r ↦ r2 is not an automorphism.
        let bad = vec![vec![0, 1, 2, 3], vec![0, 2, 0, 2]];
        assert!(GroupAction::new(c2, c4, bad).is_err());
    }
}
