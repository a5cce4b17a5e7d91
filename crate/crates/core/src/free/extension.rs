use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::{Mat, Rat};
use crate::lie::{check_lie_crossed_hom, LieAction};

use super::checks::{coalgebra_witness, crossed_pairs, PairCheck};
use super::freelie::{letter_derivation, FreeLie};
use super::trunc::{GradedTruncation, TruncAction, TruncMap};
use super::FreeError;

/// A verified extension `π̄ : U(g)≤N → U(h)≤N` of a Lie crossed homomorphism.
#[derive(Clone, Debug)]
pub struct TruncCrossedHom {
    pub map: TruncMap,
    pub action: TruncAction,
    pub pairs: PairCheck,
}

fn generator_index(u: &GradedTruncation, i: usize) -> Result<usize, FreeError> {
    u.index_of_key(&[i])
        .ok_or_else(|| FreeError::BudgetExceeded {
            needed: usize::MAX,
            budget: u.budget(),
        })
}

/// `π(x)` as an element of `U(h)≤N`.
fn embed(uh: &GradedTruncation, v: &[Rat]) -> Result<Vec<Rat>, FreeError> {
    let mut out = uh.zero();
    for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        out[generator_index(uh, k)?] = c.clone();
    }
    Ok(out)
}

/// `π̄(x₁⋯xₙ) = (π(x₁)+φ̄(x₁))⋯(π(xₙ)+φ̄(xₙ))(1)`, then verified as a coalgebra
/// map and a crossed homomorphism on every in-budget pair.
pub fn extend_crossed_hom_trunc(
    pi: &Mat,
    action: &LieAction,
    ug: &Arc<GradedTruncation>,
    uh: &Arc<GradedTruncation>,
) -> Result<TruncCrossedHom, FreeError> {
    if !check_lie_crossed_hom(pi, action)? {
        return Err(FreeError::Precondition(
            "π is not a Lie crossed homomorphism".into(),
        ));
    }
    let ext = TruncAction::from_lie(action, ug, uh)?;
    let pis: Vec<Vec<Rat>> = (0..action.acting().dim())
        .map(|x| embed(uh, &pi.col(x)))
        .collect::<Result<_, _>>()?;
    let mut images = Vec::with_capacity(ug.dim());
    for m in 0..ug.dim() {
        let mut v = uh.one();
        for &x in ug.key(m).iter().rev() {
            let gx = ug.basis_vec(generator_index(ug, x)?);
            let mut next = uh.mul(&pis[x], &v)?;
            for (o, a) in next.iter_mut().zip(ext.act(&gx, &v)?) {
                *o += a;
            }
            v = next;
        }
        images.push(v);
    }
    let map = TruncMap::from_images(ug, uh, &images)?;
    if let Some(i) = coalgebra_witness(&map) {
        return Err(FreeError::Verification(format!(
            "π̄ is not a coalgebra map at {}",
            ug.label(i)
        )));
    }
    let pairs = crossed_pairs(&map, &ext)?;
    if let Some((a, b)) = pairs.witness {
        return Err(FreeError::Verification(format!(
            "crossed identity fails at ({}, {})",
            ug.label(a),
            ug.label(b)
        )));
    }
    Ok(TruncCrossedHom {
        map,
        action: ext,
        pairs,
    })
}

/// Result of solving the primitive constraints stage by stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Uniqueness {
    /// `(PBW length, unknowns, kernel dimension)` per stage.
    pub stages: Vec<(usize, usize, usize)>,
    /// Constraint `(generator, monomial)` the unique solution violates.
    pub inconsistent: Option<(usize, usize)>,
    /// First monomial where the candidate differs from the solution.
    pub mismatch: Option<usize>,
}

impl Uniqueness {
    pub fn unique(&self) -> bool {
        self.stages.iter().all(|s| s.2 == 0)
    }

    pub fn passes(&self) -> bool {
        self.unique() && self.inconsistent.is_none() && self.mismatch.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct MmReport {
    /// `π̄(1) = 1` and `π̄ = π` on generators.
    pub restriction_ok: bool,
    pub coalgebra_witness: Option<usize>,
    pub candidate: PairCheck,
    pub uniqueness: Uniqueness,
    /// `Φ(φ̄(a)(v)) = φ_TV(a)⇀Φ(v)` over (Lie basis element, PBW monomial).
    pub club: PairCheck,
    /// The crossed identity for `Φ∘π̄∘Φ⁻¹` on `TV≤N`.
    pub diagram: PairCheck,
    pub scope: &'static str,
}

impl MmReport {
    pub fn passes(&self) -> bool {
        self.restriction_ok
            && self.coalgebra_witness.is_none()
            && self.candidate.passes()
            && self.uniqueness.passes()
            && self.club.passes()
            && self.diagram.passes()
    }
}

const SCOPE: &str = "uniqueness is checked degree by degree within the budget";

/// Extends `π` on the free Lie algebra and checks the result through the
/// identification `U(L)≤N ≅ TV≤N`.
pub fn mm_instance_check(
    fl: &FreeLie,
    pi: &Mat,
    action: &LieAction,
) -> Result<MmReport, FreeError> {
    let u = Arc::new(fl.enveloping()?);
    let ext = extend_crossed_hom_trunc(pi, action, &u, &u)?;
    mm_check_candidate(fl, pi, action, &ext.map)
}

/// The checks of [`mm_instance_check`] applied to an arbitrary candidate.
pub fn mm_check_candidate(
    fl: &FreeLie,
    pi: &Mat,
    action: &LieAction,
    candidate: &TruncMap,
) -> Result<MmReport, FreeError> {
    if action.acting().as_ref() != fl.lie().as_ref()
        || action.target().as_ref() != fl.lie().as_ref()
    {
        return Err(FreeError::Precondition(
            "the action must be on the free Lie algebra itself".into(),
        ));
    }
    let u = candidate.domain().clone();
    if candidate.codomain() != &u || u.dim() != fl.enveloping()?.dim() {
        return Err(FreeError::Malformed(
            "candidate is not an endomorphism of U(L)≤N".into(),
        ));
    }
    let ext = TruncAction::from_lie(action, &u, &u)?;
    let d = fl.lie().dim();
    let pis: Vec<Vec<Rat>> = (0..d)
        .map(|x| embed(&u, &pi.col(x)))
        .collect::<Result<_, _>>()?;
    let gens: Vec<usize> = (0..d)
        .map(|i| generator_index(&u, i))
        .collect::<Result<_, _>>()?;

    let restriction_ok = candidate.image(u.unit_index()) == u.one()
        && (0..d).all(|i| candidate.image(gens[i]) == pis[i]);

    let uniqueness = solve_stages(&u, &ext, &pis, &gens, candidate)?;
    let candidate_pairs = crossed_pairs(candidate, &ext)?;

    let tv = Arc::new(GradedTruncation::tensor(fl.generators(), fl.budget())?);
    let phi = fl.pbw_to_tensor(&u, &tv)?;
    let phi_inv = phi
        .matrix()
        .invert()
        .map_err(|e| FreeError::Malformed(alloc::string::ToString::to_string(&e)))?
        .ok_or_else(|| FreeError::Verification("U(L)≤N → TV≤N is not invertible".into()))?;
    let phi_inv = TruncMap::new(tv.clone(), u.clone(), phi_inv)?;
    let tv_action = tensor_action(fl, action, &tv)?;

    let mut club = PairCheck {
        checked: 0,
        skipped: 0,
        witness: None,
    };
    let weights = fl.weights();
    let lie_in_tv: Vec<Vec<Rat>> = (0..d).map(|i| fl.poly_in(&tv, i)).collect();
    'outer: for a in 0..d {
        for v in 0..u.dim() {
            if weights[a] + u.degree(v) > fl.budget() {
                club.skipped += 1;
                continue;
            }
            club.checked += 1;
            let lhs = phi.apply(&ext.act(&u.basis_vec(gens[a]), &u.basis_vec(v))?);
            let rhs = tv_action.act(&lie_in_tv[a], &phi.image(v))?;
            if lhs != rhs {
                club.witness = Some((a, v));
                break 'outer;
            }
        }
    }

    let outer = phi.compose(&candidate.compose(&phi_inv)?)?;
    let diagram = crossed_pairs(&outer, &tv_action)?;

    Ok(MmReport {
        restriction_ok,
        coalgebra_witness: coalgebra_witness(candidate),
        candidate: candidate_pairs,
        uniqueness,
        club,
        diagram,
        scope: SCOPE,
    })
}

/// The action of `TV≤N` on itself where each letter acts by the derivation
/// induced from the Lie action, and words act by composition.
fn tensor_action(
    fl: &FreeLie,
    action: &LieAction,
    tv: &Arc<GradedTruncation>,
) -> Result<TruncAction, FreeError> {
    let k = fl.generators();
    let lie = fl.lie();
    let derivs: Vec<Mat> = (0..k)
        .map(|l| {
            let m = &action.matrices()[l];
            let images: Vec<Vec<Rat>> = (0..k)
                .map(|v| {
                    let mut img = tv.zero();
                    for (j, c) in m.col(v).iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        for (o, p) in img.iter_mut().zip(fl.poly_in(tv, j)) {
                            *o += c * &p;
                        }
                    }
                    img
                })
                .collect();
            letter_derivation(tv, &images)
        })
        .collect::<Result<_, _>>()?;
    debug_assert_eq!(lie.dim(), action.matrices().len());
    let n = tv.budget();
    let mut table = vec![vec![tv.zero(); tv.dim()]; tv.dim()];
    for w in 0..tv.dim() {
        for x in 0..tv.dim() {
            if tv.degree(w) + tv.degree(x) > n {
                continue;
            }
            let mut v = tv.basis_vec(x);
            for &l in tv.key(w).iter().rev() {
                v = derivs[l]
                    .apply(&v)
                    .map_err(|e| FreeError::Malformed(alloc::string::ToString::to_string(&e)))?;
            }
            table[w][x] = v;
        }
    }
    TruncAction::new(tv.clone(), tv.clone(), table)
}

/// Solves `π̄(eᵢ·b) = π(eᵢ)π̄(b) + eᵢ⇀π̄(b)` by PBW length. The sorted monomial
/// `eᵢ·b` (with `i` not above `b`) pins down each unknown, the remaining
/// constraints are checked against the solution.
fn solve_stages(
    u: &GradedTruncation,
    ext: &TruncAction,
    pis: &[Vec<Rat>],
    gens: &[usize],
    candidate: &TruncMap,
) -> Result<Uniqueness, FreeError> {
    let max_len = (0..u.dim()).map(|m| u.key(m).len()).max().unwrap_or(0);
    let mut sol: Vec<Option<Vec<Rat>>> = vec![None; u.dim()];
    sol[u.unit_index()] = Some(u.one());
    for (i, g) in gens.iter().enumerate() {
        sol[*g] = Some(pis[i].clone());
    }
    let mut report = Uniqueness {
        stages: Vec::new(),
        inconsistent: None,
        mismatch: None,
    };
    for len in 2..=max_len {
        let unknowns: Vec<usize> = (0..u.dim()).filter(|&m| u.key(m).len() == len).collect();
        let col_of = |m: usize| unknowns.iter().position(|&x| x == m);
        // constraint rows: (generator, monomial of length len - 1)
        let mut rows: Vec<(usize, usize, Vec<(usize, Rat)>)> = Vec::new();
        for (i, &g) in gens.iter().enumerate() {
            for b in (0..u.dim()).filter(|&b| u.key(b).len() == len - 1) {
                if let Some(prod) = u.mul_basis(g, b) {
                    rows.push((i, b, prod.to_vec()));
                }
            }
        }
        let mut a = Mat::zeros(rows.len(), unknowns.len());
        for (r, (_, _, prod)) in rows.iter().enumerate() {
            for (m, c) in prod {
                if let Some(j) = col_of(*m) {
                    a[(r, j)] = c.clone();
                }
            }
        }
        report
            .stages
            .push((len, unknowns.len(), unknowns.len() - a.rank()));
        let rhs = |i: usize,
                   b: usize,
                   sol: &[Option<Vec<Rat>>],
                   prod: &[(usize, Rat)]|
         -> Result<Vec<Rat>, FreeError> {
            let xb = sol[b].as_ref().expect("earlier stage solved");
            let mut v = u.mul(&pis[i], xb)?;
            for (o, t) in v.iter_mut().zip(ext.act(&u.basis_vec(gens[i]), xb)?) {
                *o += t;
            }
            for (m, c) in prod {
                if col_of(*m).is_none() {
                    for (o, t) in v
                        .iter_mut()
                        .zip(sol[*m].as_ref().expect("lower length solved"))
                    {
                        *o -= c * t;
                    }
                }
            }
            Ok(v)
        };
        for &m in &unknowns {
            let key = u.key(m);
            let b = u.index_of_key(&key[1..]).expect("suffix of a PBW key");
            let g = gens
                .iter()
                .position(|&x| u.key(x)[0] == key[0])
                .expect("generator");
            let (_, _, prod) = rows
                .iter()
                .find(|r| r.0 == g && r.1 == b)
                .expect("constraint row");
            // the sorted monomial enters with coefficient 1
            let v = rhs(g, b, &sol, prod)?;
            sol[m] = Some(v);
        }
        if report.inconsistent.is_none() {
            for (i, b, prod) in &rows {
                let mut lhs = u.zero();
                for (m, c) in prod.iter().filter(|(m, _)| col_of(*m).is_some()) {
                    for (o, t) in lhs.iter_mut().zip(sol[*m].as_ref().expect("solved")) {
                        *o += c * t;
                    }
                }
                if lhs != rhs(*i, *b, &sol, prod)? {
                    report.inconsistent = Some((*i, *b));
                    break;
                }
            }
        }
    }
    report.mismatch =
        (0..u.dim()).find(|&m| sol[m].as_ref().is_some_and(|s| *s != candidate.image(m)));
    Ok(report)
}
