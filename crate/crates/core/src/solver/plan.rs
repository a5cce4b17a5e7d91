use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::diffops::group_of_grouplikes;
use crate::exactlin::{Mat, Rat};
use crate::groups::FinGroup;
use crate::hopf::FinDimHopf;

use super::SolverError;

/// How the image of a scheduled generator is parametrised.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ansatz {
    /// Every coordinate of `D(c)` is unknown.
    Free,
    /// `D(c) = p·c` with `p ∈ kG`. Justified only for bijective operators, when
    /// `kG·c` is the unique simple subcoalgebra outside `kG` of a cosemisimple `H`.
    GroupTimes,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduledGenerator {
    pub index: usize,
    /// Basis elements allowed in the tensor legs of `Δ(c)`.
    pub support: Vec<usize>,
    pub ansatz: Ansatz,
}

/// How a basis element is reached from the plan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// Group index.
    Grouplike(usize),
    /// Position in the schedule.
    Scheduled(usize),
    /// `g·c` for group index `g` and schedule position `k`.
    Translate { g: usize, k: usize },
}

#[derive(Clone, Debug)]
pub struct SearchPlan {
    target: Arc<FinDimHopf>,
    group: Arc<FinGroup>,
    grouplike_indices: Vec<usize>,
    schedule: Vec<ScheduledGenerator>,
    /// `σ` on group indices with `c·g = σ(g)·c` for every scheduled `c`.
    commutation: Option<Vec<usize>>,
    roles: Vec<Role>,
}

fn product_is_basis(h: &FinDimHopf, i: usize, j: usize) -> Option<usize> {
    match h.mult_basis(i, j) {
        [(k, c)] if c.is_one() => Some(*k),
        _ => None,
    }
}

impl SearchPlan {
    /// Verifies triangularity of the schedule, the role of every basis element
    /// and the commutation data.
    pub fn new(
        target: Arc<FinDimHopf>,
        schedule: Vec<ScheduledGenerator>,
        commutation: Option<Vec<usize>>,
    ) -> Result<Self, SolverError> {
        let h = &target;
        let (group, gl) = group_of_grouplikes(h).map_err(|e| SolverError::Plan(format!("{e}")))?;
        let n = h.dim();
        let mut roles: Vec<Option<Role>> = alloc::vec![None; n];
        for (g, &b) in gl.iter().enumerate() {
            roles[b] = Some(Role::Grouplike(g));
        }
        for (k, s) in schedule.iter().enumerate() {
            if s.index >= n || roles[s.index].is_some() {
                return Err(SolverError::Plan(format!(
                    "generator {} is out of range or already reached",
                    s.index
                )));
            }
            roles[s.index] = Some(Role::Scheduled(k));
        }
        for (k, s) in schedule.iter().enumerate() {
            for (g, &b) in gl.iter().enumerate() {
                if let Some(t) = product_is_basis(h, b, s.index) {
                    if roles[t].is_none() {
                        roles[t] = Some(Role::Translate { g, k });
                    }
                }
            }
        }
        for (k, s) in schedule.iter().enumerate() {
            let orbit: Vec<usize> = gl
                .iter()
                .filter_map(|&b| product_is_basis(h, b, s.index))
                .collect();
            let earlier: Vec<usize> = schedule[..k].iter().map(|e| e.index).collect();
            let allowed = |b: usize| gl.contains(&b) || earlier.contains(&b) || orbit.contains(&b);
            if let Some(b) = s.support.iter().find(|&&b| !allowed(b)) {
                return Err(SolverError::Plan(format!(
                    "support of {} contains {}, which is neither group-like, earlier, nor a translate",
                    h.label(s.index),
                    h.label(*b)
                )));
            }
            if let Some((i, j, _)) = h
                .comult_basis(s.index)
                .iter()
                .find(|(i, j, _)| !s.support.contains(i) || !s.support.contains(j))
            {
                return Err(SolverError::Plan(format!(
                    "triangularity fails: Δ({}) has the term {}⊗{} outside the declared support",
                    h.label(s.index),
                    h.label(*i),
                    h.label(*j)
                )));
            }
        }
        let roles: Vec<Role> = roles
            .into_iter()
            .enumerate()
            .map(|(b, r)| {
                r.ok_or_else(|| {
                    SolverError::Plan(format!("{} is not reached by the schedule", h.label(b)))
                })
            })
            .collect::<Result<_, _>>()?;
        if let Some(sigma) = &commutation {
            if sigma.len() != gl.len() {
                return Err(SolverError::Plan(
                    "commutation data has the wrong length".into(),
                ));
            }
            for s in &schedule {
                for (g, &b) in gl.iter().enumerate() {
                    let lhs = h.mul(&h.basis_vec(s.index), &h.basis_vec(b));
                    let rhs = h.mul(&h.basis_vec(gl[sigma[g]]), &h.basis_vec(s.index));
                    if lhs != rhs {
                        return Err(SolverError::Plan(format!(
                            "{}·{} ≠ σ({})·{}",
                            h.label(s.index),
                            h.label(b),
                            h.label(b),
                            h.label(s.index)
                        )));
                    }
                }
            }
        }
        Ok(SearchPlan {
            target,
            group: Arc::new(group),
            grouplike_indices: gl,
            schedule,
            commutation,
            roles,
        })
    }

    pub fn target(&self) -> &Arc<FinDimHopf> {
        &self.target
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn grouplike_indices(&self) -> &[usize] {
        &self.grouplike_indices
    }

    pub fn schedule(&self) -> &[ScheduledGenerator] {
        &self.schedule
    }

    pub fn commutation(&self) -> Option<&[usize]> {
        self.commutation.as_deref()
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    /// Checks the conditions under which `D(c) ∈ kG·c` holds for bijective `D`:
    /// `H` is cosemisimple and `H = kG ⊕ kG·c` with `kG·c` a simple subcoalgebra.
    pub fn justify_group_times(&self, k: usize) -> Result<(), String> {
        let h = &self.target;
        let c = self.schedule[k].index;
        let orbit: Vec<usize> = self
            .grouplike_indices
            .iter()
            .filter_map(|&b| product_is_basis(h, b, c))
            .collect();
        let mut sorted = orbit.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.grouplike_indices.len() {
            return Err(format!("kG·{} is not free over kG", h.label(c)));
        }
        if sorted.len() + self.grouplike_indices.len() != h.dim() {
            return Err(format!("H is not kG ⊕ kG·{}", h.label(c)));
        }
        for &b in &sorted {
            if h.comult_basis(b)
                .iter()
                .any(|(i, j, _)| !sorted.contains(i) || !sorted.contains(j))
            {
                return Err(format!("kG·{} is not a subcoalgebra", h.label(c)));
            }
        }
        if h.counit_basis(c).is_zero() {
            return Err(format!("ε({}) = 0", h.label(c)));
        }
        let (center, nondegenerate) = dual_algebra_checks(h, &sorted);
        if center != 1 || !nondegenerate {
            return Err(format!("kG·{} is not a simple coalgebra", h.label(c)));
        }
        let all: Vec<usize> = (0..h.dim()).collect();
        if !dual_algebra_checks(h, &all).1 {
            return Err(String::from("H is not cosemisimple"));
        }
        Ok(())
    }
}

/// Center dimension and trace-form nondegeneracy of the dual algebra of the
/// subcoalgebra spanned by `basis`.
pub fn dual_algebra_checks(h: &FinDimHopf, basis: &[usize]) -> (usize, bool) {
    let m = basis.len();
    let pos = |b: usize| basis.iter().position(|&x| x == b).expect("closed under Δ");
    // coef[k][i][j]: coefficient of c_i ⊗ c_j in Δ(c_k)
    let mut coef = alloc::vec![alloc::vec![alloc::vec![Rat::zero(); m]; m]; m];
    for (k, &b) in basis.iter().enumerate() {
        for (i, j, c) in h.comult_basis(b) {
            coef[k][pos(*i)][pos(*j)] += c;
        }
    }
    // left multiplication by eⁱ: (L_i)_{k,j} = coef[k][i][j]
    let left: Vec<Mat> = (0..m)
        .map(|i| {
            let mut l = Mat::zeros(m, m);
            for k in 0..m {
                for j in 0..m {
                    l[(k, j)] = coef[k][i][j].clone();
                }
            }
            l
        })
        .collect();
    let mut trace = Mat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let p = left[i].mul(&left[j]).expect("square");
            trace[(i, j)] = (0..m).map(|d| p[(d, d)].clone()).sum();
        }
    }
    let mut commutator = Mat::zeros(m * m, m);
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                commutator[(j * m + k, i)] = &coef[k][i][j] - &coef[k][j][i];
            }
        }
    }
    (m - commutator.rank(), trace.rank() == m)
}
