use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::actions::ActionData;
use crate::exactlin::Mat;
use crate::groups::{check_group_diffop, group_algebra, lift_map, FinGroup, GroupMap};
use crate::hopf::{grouplikes, primitives, FinDimHopf, LinMap};

use super::{check_diff_module_bialgebra, check_diffop, extend_diff_smash, DiffError, DiffOp};

/// The group of declared group-likes, with the basis index of each element.
pub fn group_of_grouplikes(h: &FinDimHopf) -> Result<(FinGroup, Vec<usize>), DiffError> {
    let gl = grouplikes(h)?;
    if !gl.complete {
        return Err(DiffError::Verification(alloc::format!(
            "`{}` declares no coradical",
            h.name()
        )));
    }
    let idx = gl.indices;
    let table = idx
        .iter()
        .map(|&i| {
            idx.iter()
                .map(|&j| {
                    let p = h.mul(&h.basis_vec(i), &h.basis_vec(j));
                    idx.iter()
                        .position(|&k| h.basis_vec(k) == p)
                        .expect("closure verified")
                })
                .collect()
        })
        .collect();
    let labels = idx.iter().map(|&i| h.label(i).to_string()).collect();
    let g = FinGroup::new(alloc::format!("G({})", h.name()), labels, table)
        .map_err(|e| DiffError::Verification(e.to_string()))?;
    Ok((g, idx))
}

#[derive(Clone, Debug)]
pub struct CkmmReport {
    pub group_order: usize,
    pub primitive_dim: usize,
    /// `D` restricted to `G(H)`.
    pub restriction: GroupMap,
    pub restriction_is_group_diffop: bool,
    /// `k#kG` with the extended operator, identified with `H` through `1#g ↦ g`.
    pub reconstruction_matches: bool,
}

impl CkmmReport {
    pub fn holds(&self) -> bool {
        self.primitive_dim == 0 && self.restriction_is_group_diffop && self.reconstruction_matches
    }
}

/// Finite-dimensional instance: `H` must be `kG`. Checks that `D` restricts to a
/// group difference operator and that the smash reconstruction over the trivial
/// primitive part gives back `D`.
pub fn ckmm_instance_check(d: &DiffOp) -> Result<CkmmReport, DiffError> {
    let h = d.map().domain();
    if !h.is_cocommutative() {
        return Err(DiffError::NotCocommutative(String::from(h.name())));
    }
    let (g, idx) = group_of_grouplikes(h)?;
    let primitive_dim = primitives(h.as_ref()).len();
    if g.order() != h.dim() {
        return Err(DiffError::Verification(alloc::format!(
            "`{}` is not spanned by its {} group-likes",
            h.name(),
            g.order()
        )));
    }
    let images = idx
        .iter()
        .map(|&i| {
            let v = d.map().image(i);
            idx.iter()
                .position(|&k| h.basis_vec(k) == v)
                .ok_or_else(|| {
                    DiffError::Verification(alloc::format!("D({}) is not a group-like", h.label(i)))
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let g = Arc::new(g);
    let restriction = GroupMap::new(g.clone(), g.clone(), images)
        .map_err(|e| DiffError::Verification(e.to_string()))?;
    let restriction_is_group_diffop = check_group_diffop(&restriction);

    let trivial = Arc::new(group_algebra(&FinGroup::cyclic(1, "e")).renamed("k"));
    let kg = Arc::new(group_algebra(&g));
    let dk = check_diffop(&lift_map(&restriction, &kg, &kg)?).map_err(DiffError::NotDiffop)?;
    let dt = check_diffop(&LinMap::identity(&trivial)).map_err(DiffError::NotDiffop)?;
    let action = ActionData::trivial(&kg, &trivial);
    let m = check_diff_module_bialgebra(&dt, &dk, &action)?;
    let ext = extend_diff_smash(&m)?;
    // 1#g at index p corresponds to the basis element idx[p] of H.
    let n = h.dim();
    let mut iso = Mat::zeros(n, n);
    for (p, &i) in idx.iter().enumerate() {
        iso[(i, p)] = crate::exactlin::Rat::one();
    }
    let iso = LinMap::new(ext.smash.clone(), h.clone(), iso)?;
    let reconstruction_matches = iso.compose(ext.op.map())? == d.map().compose(&iso)?;
    Ok(CkmmReport {
        group_order: g.order(),
        primitive_dim,
        restriction,
        restriction_is_group_diffop,
        reconstruction_matches,
    })
}
