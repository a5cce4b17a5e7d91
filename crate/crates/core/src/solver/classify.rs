use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diffops::{check_diffop, DiffOp};
use crate::exactlin::{solve_affine, Mat, Rat};
use crate::groups::endo_diffop_bijection;
use crate::hopf::LinMap;

use super::eliminate::eliminate;
use super::plan::{Ansatz, Role, SearchPlan};
use super::poly::{hpoly_add_scaled, hpoly_const, hpoly_mul, hpoly_zero, HPoly, Poly};
use super::quadratic::{
    characters, combinations, rational_roots, solve_quadratic_in_group_algebra,
};
use super::SolverError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Complete,
    /// One residual system description per unresolved branch.
    Partial(Vec<String>),
}

impl Certificate {
    pub fn is_complete(&self) -> bool {
        matches!(self, Certificate::Complete)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchStatus {
    /// Skipped under `bijective_only` because the restriction forces a singular matrix.
    Pruned(String),
    /// Provably no solution.
    Empty(String),
    /// Finitely many candidates, all examined.
    Solved,
    /// Unreduced polynomial constraints remain.
    Residual(String),
}

/// How the nonlinear constraints of a branch were resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Route {
    None,
    Linear,
    /// `q(p) = r` in the group algebra, with `q` low-degree first.
    GroupAlgebraQuadratic {
        q: Vec<Rat>,
        r: Vec<Rat>,
    },
    /// Decoupled per character but not of the single `q(p) = r` shape.
    PerCharacter,
    /// Linear elimination with splitting on rational roots of univariate consequences.
    Elimination,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchLog {
    /// `D` on group indices.
    pub restriction: Vec<usize>,
    pub ansatz: Vec<Ansatz>,
    pub notes: Vec<String>,
    pub status: BranchStatus,
    pub route: Route,
    /// Candidates produced by the nonlinear step, before the remaining constraints.
    pub intermediate: Option<usize>,
    pub survivors: usize,
}

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub operators: Vec<DiffOp>,
    pub certificate: Certificate,
    pub branches: Vec<BranchLog>,
}

struct Branch<'a> {
    plan: &'a SearchPlan,
    names: Vec<String>,
    values: Vec<HPoly>,
}

impl Branch<'_> {
    fn dim(&self) -> usize {
        self.plan.target().dim()
    }

    fn coalgebra_constraints(&self) -> Vec<Poly> {
        let h = self.plan.target();
        let mut out = Vec::new();
        for (b, role) in self.plan.roles().iter().enumerate() {
            if matches!(role, Role::Grouplike(_)) {
                continue;
            }
            let mut eps = Poly::constant(-h.counit_basis(b));
            for (i, p) in self.values[b].iter().enumerate() {
                eps.add_assign_scaled(h.counit_basis(i), p);
            }
            if !eps.is_zero() {
                out.push(eps);
            }
            let mut diff: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
            for (i, p) in self.values[b]
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
            {
                for (l, r, c) in h.comult_basis(i) {
                    diff.entry((*l, *r)).or_default().add_assign_scaled(c, p);
                }
            }
            for (b1, b2, c) in h.comult_basis(b) {
                for (p, u) in self.values[*b1]
                    .iter()
                    .enumerate()
                    .filter(|(_, u)| !u.is_zero())
                {
                    for (q, w) in self.values[*b2]
                        .iter()
                        .enumerate()
                        .filter(|(_, w)| !w.is_zero())
                    {
                        diff.entry((p, q))
                            .or_default()
                            .add_assign_scaled(&-c, &u.mul(w));
                    }
                }
            }
            out.extend(diff.into_values().filter(|p| !p.is_zero()));
        }
        out
    }

    fn identity_constraints(&self) -> Vec<Poly> {
        let h = self.plan.target();
        let n = self.dim();
        let antipodes: Vec<HPoly> = (0..n)
            .map(|k| hpoly_const(&h.antipode(&h.basis_vec(k))))
            .collect();
        let mut out = Vec::new();
        for x in 0..n {
            let mut left: BTreeMap<usize, HPoly> = BTreeMap::new();
            for (i, j, k, c) in h.comult2_basis(x) {
                let t = hpoly_mul(h, &self.values[*i], &hpoly_const(&h.basis_vec(*j)));
                hpoly_add_scaled(left.entry(*k).or_insert_with(|| hpoly_zero(n)), c, &t);
            }
            for y in 0..n {
                let mut d = hpoly_zero(n);
                for (k, c) in h.mult_basis(x, y) {
                    hpoly_add_scaled(&mut d, c, &self.values[*k]);
                }
                for (k, l) in &left {
                    let t = hpoly_mul(h, &hpoly_mul(h, l, &self.values[y]), &antipodes[*k]);
                    hpoly_add_scaled(&mut d, &-Rat::one(), &t);
                }
                out.extend(d.into_iter().filter(|p| !p.is_zero()));
            }
        }
        out
    }
}

fn describe(polys: &[Poly], names: &[String]) -> String {
    let shown: Vec<String> = polys
        .iter()
        .take(6)
        .map(|p| format!("{} = 0", p.format_with(names)))
        .collect();
    let more = polys.len().saturating_sub(shown.len());
    if more > 0 {
        format!("{} (and {more} more)", shown.join("; "))
    } else {
        shown.join("; ")
    }
}

/// Linear rows among `polys` in `nvars` variables.
fn linear_rows(polys: &[Poly], nvars: usize) -> Vec<(Vec<Rat>, Rat)> {
    polys.iter().filter_map(|p| p.as_affine(nvars)).collect()
}

/// Solves the linear rows; `Ok(None)` when inconsistent, otherwise the affine
/// parametrisation of the variables by fresh ones.
fn solve_rows(rows: &[(Vec<Rat>, Rat)], nvars: usize) -> Result<Option<Vec<Poly>>, SolverError> {
    if rows.is_empty() {
        return Ok(Some((0..nvars).map(Poly::var).collect()));
    }
    let a = Mat::from_rows(rows.iter().map(|r| r.0.clone()).collect())
        .map_err(|e| SolverError::Malformed(format!("{e}")))?;
    let b: Vec<Rat> = rows.iter().map(|r| -&r.1).collect();
    let sol = solve_affine(&a, &b).map_err(|e| SolverError::Malformed(format!("{e}")))?;
    let Some(part) = sol.particular else {
        return Ok(None);
    };
    Ok(Some(
        (0..nvars)
            .map(|v| {
                let mut p = Poly::constant(part[v].clone());
                for (s, k) in sol.kernel_basis.iter().enumerate() {
                    p.add_term(vec![s], k[v].clone());
                }
                p
            })
            .collect(),
    ))
}

/// Outcome of the nonlinear step in character coordinates.
enum Decoupled {
    Candidates { points: Vec<Vec<Rat>>, route: Route },
    Empty(String),
    Stuck(String),
}

/// RREF over monomials in character coordinates, with mixed monomials pivoted
/// first, so that rows left over involve a single character each.
fn decouple(
    plan: &SearchPlan,
    constraints: &[Poly],
    names: &[String],
) -> Result<Decoupled, SolverError> {
    let group = plan.group();
    let chars = match characters(group) {
        Ok(c) => c,
        Err(_) => {
            return Ok(Decoupled::Stuck(format!(
                "{} is not elementary abelian of exponent 2",
                group.name()
            )))
        }
    };
    let n = group.order();
    let scale = Rat::new(1, n as i64);
    let to_t: Vec<Poly> = (0..n)
        .map(|g| {
            let mut p = Poly::zero();
            for (c, chi) in chars.iter().enumerate() {
                p.add_term(vec![c], if chi[g] > 0 { scale.clone() } else { -&scale });
            }
            p
        })
        .collect();
    let in_t: Vec<Poly> = constraints
        .iter()
        .map(|p| p.compose(&to_t))
        .filter(|p| !p.is_zero())
        .collect();
    // column classes: mixed first, then per character t², t, then the constant
    let class = |m: &[usize]| -> (usize, usize, usize) {
        match m {
            [] => (2, 0, 0),
            [a] => (1, *a, 1),
            [a, b] if a == b => (1, *a, 0),
            _ => (0, 0, 0),
        }
    };
    let mut monos: Vec<Vec<usize>> = in_t
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    monos.sort_by(|a, b| class(a).cmp(&class(b)).then_with(|| a.cmp(b)));
    monos.dedup();
    if monos.iter().any(|m| m.len() > 2) {
        return Ok(Decoupled::Stuck(describe(constraints, names)));
    }
    let col: BTreeMap<&Vec<usize>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut a = Mat::zeros(in_t.len(), monos.len());
    for (r, p) in in_t.iter().enumerate() {
        for (m, c) in p.terms() {
            a[(r, col[m])] = c.clone();
        }
    }
    let rref = a.rref();
    let mut per_char: Vec<Vec<Vec<Rat>>> = vec![Vec::new(); n];
    for (r, &pc) in rref.pivots.iter().enumerate() {
        let row = rref.matrix.row(r);
        let support: Vec<&Vec<usize>> = (0..monos.len())
            .filter(|&j| !row[j].is_zero())
            .map(|j| &monos[j])
            .collect();
        if class(&monos[pc]).0 == 2 {
            return Ok(Decoupled::Empty(String::from(
                "constraints reduce to a nonzero constant",
            )));
        }
        let chi = class(&monos[pc]).1;
        let single = class(&monos[pc]).0 == 1
            && support
                .iter()
                .all(|m| m.is_empty() || m.iter().all(|&v| v == chi));
        if !single {
            continue;
        }
        let mut coeffs = vec![Rat::zero(); 3];
        for (j, m) in monos.iter().enumerate() {
            if !row[j].is_zero() && (m.is_empty() || m[0] == chi) {
                coeffs[m.len()] = row[j].clone();
            }
        }
        per_char[chi].push(coeffs);
    }
    let mut roots: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for (chi, rows) in per_char.iter().enumerate() {
        if rows.is_empty() {
            return Ok(Decoupled::Stuck(format!(
                "character {chi} is not bounded by a decoupled equation: {}",
                describe(constraints, names)
            )));
        }
        let mut common: Option<Vec<Rat>> = None;
        for row in rows {
            let r = rational_roots(row).expect("pivot rows are nonzero");
            common = Some(match common {
                None => r,
                Some(prev) => prev.into_iter().filter(|x| r.contains(x)).collect(),
            });
        }
        let common = common.expect("at least one row");
        if common.is_empty() {
            return Ok(Decoupled::Empty(format!(
                "no rational value for character {chi}"
            )));
        }
        roots.push(common);
    }
    // a single q(p) = r shape: one row per character, sharing the t² and t coefficients
    let shared = per_char.iter().all(|rows| rows.len() == 1)
        && per_char
            .iter()
            .all(|rows| rows[0][1] == per_char[0][0][1] && rows[0][2] == per_char[0][0][2]);
    if shared {
        let q = vec![
            Rat::zero(),
            per_char[0][0][1].clone(),
            per_char[0][0][2].clone(),
        ];
        let rhat: Vec<Rat> = per_char.iter().map(|rows| -&rows[0][0]).collect();
        let r = super::quadratic::inverse_character_transform(&chars, &rhat);
        let sols = solve_quadratic_in_group_algebra(group, &q, &r)?;
        if !sols.no_rational_solution.is_empty() {
            return Ok(Decoupled::Empty(format!(
                "q(p) = r has no rational solution at characters {:?}",
                sols.no_rational_solution
            )));
        }
        return Ok(Decoupled::Candidates {
            points: sols.solutions,
            route: Route::GroupAlgebraQuadratic { q, r },
        });
    }
    let points = combinations(&roots)
        .into_iter()
        .map(|t| super::quadratic::inverse_character_transform(&chars, &t))
        .collect();
    Ok(Decoupled::Candidates {
        points,
        route: Route::PerCharacter,
    })
}

fn build_map(plan: &SearchPlan, values: &[HPoly], point: &[Rat]) -> Result<LinMap, SolverError> {
    let images: Vec<Vec<Rat>> = values
        .iter()
        .map(|v| v.iter().map(|p| p.eval(point)).collect())
        .collect();
    LinMap::from_images(plan.target(), &images).map_err(SolverError::Hopf)
}

/// Classifies difference operators branch by branch over the group-like restrictions.
pub fn classify_diffops(
    plan: &SearchPlan,
    bijective_only: bool,
) -> Result<ClassificationResult, SolverError> {
    let h = plan.target();
    let n = h.dim();
    let gl = plan.grouplike_indices();
    let group = plan.group();
    let restrictions = endo_diffop_bijection(group).map_err(SolverError::Group)?;
    let mut operators: Vec<DiffOp> = Vec::new();
    let mut branches = Vec::new();
    let mut residuals = Vec::new();

    for (_, dg) in restrictions {
        let restriction = dg.images.clone();
        let mut log = BranchLog {
            restriction: restriction.clone(),
            ansatz: Vec::new(),
            notes: Vec::new(),
            status: BranchStatus::Solved,
            route: Route::None,
            intermediate: None,
            survivors: 0,
        };
        if bijective_only {
            let mut seen = BTreeMap::new();
            if let Some((a, b)) = restriction
                .iter()
                .enumerate()
                .find_map(|(a, &d)| seen.insert(d, a).map(|b| (b, a)))
            {
                log.status = BranchStatus::Pruned(format!(
                    "D({}) = D({}), so two columns coincide",
                    group.label(a),
                    group.label(b)
                ));
                branches.push(log);
                continue;
            }
        }

        // Phase 2 set-up: unknowns per scheduled generator
        let mut names: Vec<String> = Vec::new();
        let mut sched_values: Vec<HPoly> = Vec::new();
        for (k, s) in plan.schedule().iter().enumerate() {
            let ansatz = match s.ansatz {
                Ansatz::GroupTimes if !bijective_only => {
                    log.notes.push(format!(
                        "D({}) ∈ kG·{} needs bijectivity; using free unknowns",
                        h.label(s.index),
                        h.label(s.index)
                    ));
                    Ansatz::Free
                }
                Ansatz::GroupTimes => match plan.justify_group_times(k) {
                    Ok(()) => Ansatz::GroupTimes,
                    Err(why) => {
                        log.notes
                            .push(format!("ansatz rejected: {why}; using free unknowns"));
                        Ansatz::Free
                    }
                },
                Ansatz::Free => Ansatz::Free,
            };
            log.ansatz.push(ansatz);
            let mut v = hpoly_zero(n);
            match ansatz {
                Ansatz::Free => {
                    for i in 0..n {
                        v[i] = Poly::var(names.len());
                        names.push(format!("D({})[{}]", h.label(s.index), h.label(i)));
                    }
                }
                Ansatz::GroupTimes => {
                    for &g in gl {
                        let gc = h.mul(&h.basis_vec(g), &h.basis_vec(s.index));
                        let var = Poly::var(names.len());
                        names.push(format!("p[{}]", h.label(g)));
                        for (i, c) in gc.iter().enumerate() {
                            v[i].add_assign_scaled(c, &var);
                        }
                    }
                }
            }
            sched_values.push(v);
        }
        let nvars = names.len();
        let group_image = |g: usize| h.basis_vec(gl[restriction[g]]);
        let values: Vec<HPoly> = plan
            .roles()
            .iter()
            .map(|role| match *role {
                Role::Grouplike(g) => hpoly_const(&group_image(g)),
                Role::Scheduled(k) => sched_values[k].clone(),
                Role::Translate { g, k } => {
                    // D(g·c) = D(g)·g·D(c)·g⁻¹
                    let dg = hpoly_const(&h.mul(&group_image(g), &h.basis_vec(gl[g])));
                    let ginv = hpoly_const(&h.basis_vec(gl[group.inv(g)]));
                    hpoly_mul(h, &hpoly_mul(h, &dg, &sched_values[k]), &ginv)
                }
            })
            .collect();
        let branch = Branch {
            plan,
            names,
            values,
        };

        // Phase 2: coalgebra constraints; Phase 3: the difference identity
        let coalgebra = branch.coalgebra_constraints();
        let identity = branch.identity_constraints();
        let all: Vec<Poly> = coalgebra.iter().chain(&identity).cloned().collect();
        if all.iter().any(|p| p.degree() == 0) {
            log.status =
                BranchStatus::Empty(String::from("a constraint reduces to a nonzero constant"));
            branches.push(log);
            continue;
        }
        let mut rows = linear_rows(&coalgebra, nvars);
        rows.extend(linear_rows(&identity, nvars));
        let mut subs = match solve_rows(&rows, nvars)? {
            Some(s) => s,
            None => {
                log.status =
                    BranchStatus::Empty(String::from("linear constraints are inconsistent"));
                branches.push(log);
                continue;
            }
        };
        // substitute until no new linear constraints appear
        let mut reduced: Vec<Poly>;
        loop {
            reduced = all
                .iter()
                .map(|p| p.compose(&subs))
                .filter(|p| !p.is_zero())
                .collect();
            if reduced.iter().any(|p| p.degree() == 0) {
                break;
            }
            let fresh = subs
                .iter()
                .flat_map(|p| p.terms().flat_map(|(m, _)| m.iter().copied()))
                .max()
                .map_or(0, |m| m + 1);
            let new_rows = linear_rows(&reduced, fresh);
            if new_rows.is_empty() {
                break;
            }
            let Some(next) = solve_rows(&new_rows, fresh)? else {
                reduced = vec![Poly::constant(Rat::one())];
                break;
            };
            subs = subs.iter().map(|p| p.compose(&next)).collect();
        }
        if reduced.iter().any(|p| p.degree() == 0) {
            log.status = BranchStatus::Empty(String::from("linear constraints are inconsistent"));
            branches.push(log);
            continue;
        }

        let free_vars = subs
            .iter()
            .flat_map(|p| p.terms().flat_map(|(m, _)| m.iter().copied()))
            .max()
            .map_or(0, |m| m + 1);
        let points: Vec<Vec<Rat>> = if reduced.is_empty() && free_vars == 0 {
            log.route = if nvars == 0 {
                Route::None
            } else {
                Route::Linear
            };
            vec![subs.iter().map(|p| p.constant_term()).collect()]
        } else if reduced.is_empty() {
            let msg = format!("{} free parameters remain with no constraint", free_vars);
            log.status = BranchStatus::Residual(msg.clone());
            residuals.push(msg);
            branches.push(log);
            continue;
        } else {
            let mut points = None;
            if log.ansatz == [Ansatz::GroupTimes] {
                // nonlinear residue in p ∈ kG: dispatch in character coordinates;
                // the coalgebra constraints act afterwards as the comultiplication filter
                match decouple(plan, &identity, &branch.names)? {
                    Decoupled::Candidates { points: p, route } => {
                        log.intermediate = Some(p.len());
                        log.route = route;
                        points = Some(p);
                    }
                    Decoupled::Empty(why) => {
                        log.status = BranchStatus::Empty(why);
                        branches.push(log);
                        continue;
                    }
                    Decoupled::Stuck(desc) => {
                        log.notes.push(format!("no character decoupling: {desc}"))
                    }
                }
            }
            match points {
                Some(p) => p,
                None => {
                    let el = eliminate(&all, nvars);
                    log.route = Route::Elimination;
                    log.intermediate = Some(el.points.len());
                    if !el.stuck.is_empty() {
                        let desc: Vec<String> = el
                            .stuck
                            .iter()
                            .map(|sys| describe(sys, &branch.names))
                            .collect();
                        let desc = desc.join(" | ");
                        log.status = BranchStatus::Residual(desc.clone());
                        residuals.push(desc);
                    }
                    el.points
                }
            }
        };

        // Phase 4: every candidate is checked against all constraints, then re-verified
        for point in points {
            if !all.iter().all(|p| p.eval(&point).is_zero()) {
                continue;
            }
            let map = build_map(plan, &branch.values, &point)?;
            let op = check_diffop(&map).map_err(|e| SolverError::Verification(format!("{e}")))?;
            if bijective_only && !op.is_bijective() {
                continue;
            }
            log.survivors += 1;
            operators.push(op);
        }
        if log.survivors == 0 && log.status == BranchStatus::Solved {
            log.status =
                BranchStatus::Empty(String::from("no candidate satisfies every constraint"));
        }
        branches.push(log);
    }

    operators.sort_by(|a, b| a.map().matrix().entries().cmp(b.map().matrix().entries()));
    operators.dedup_by(|a, b| a.map() == b.map());
    let certificate = if residuals.is_empty() {
        Certificate::Complete
    } else {
        Certificate::Partial(residuals)
    };
    Ok(ClassificationResult {
        operators,
        certificate,
        branches,
    })
}
