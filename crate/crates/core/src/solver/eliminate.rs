use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::{Mat, Rat};

use super::poly::Poly;
use super::quadratic::rational_roots;

/// Leaves explored before giving up on a system.
const LEAF_BUDGET: usize = 1 << 12;

/// Outcome of exact elimination with rational root splitting.
#[derive(Clone, Debug, Default)]
pub struct Elimination {
    /// Every rational point found, in the original variables.
    pub points: Vec<Vec<Rat>>,
    /// Subsystems that neither linearise nor split; nonempty means incomplete.
    pub stuck: Vec<Vec<Poly>>,
}

/// Solves `polys = 0` in `nvars` unknowns by alternating linear elimination
/// with splitting on the rational roots of univariate consequences.
pub fn eliminate(polys: &[Poly], nvars: usize) -> Elimination {
    let mut out = Elimination::default();
    let assign: Vec<Poly> = (0..nvars).map(Poly::var).collect();
    let mut leaves = 0;
    branch(polys.to_vec(), assign, &mut out, &mut leaves);
    out
}

fn substitute(polys: &[Poly], assign: &[Poly], v: usize, expr: &Poly) -> (Vec<Poly>, Vec<Poly>) {
    let nvars = assign.len();
    let subs: Vec<Poly> = (0..nvars)
        .map(|i| if i == v { expr.clone() } else { Poly::var(i) })
        .collect();
    (
        polys.iter().map(|p| p.compose(&subs)).collect(),
        assign.iter().map(|p| p.compose(&subs)).collect(),
    )
}

fn is_univariate(m: &[usize]) -> Option<usize> {
    match m.first() {
        Some(&v) if m.iter().all(|&w| w == v) => Some(v),
        _ => None,
    }
}

/// Row-reduces over monomials with mixed ones pivoted first; returns the
/// reduced rows that are affine or univariate.
fn consequences(polys: &[Poly]) -> Vec<Poly> {
    // mixed monomials first, then per variable by falling degree, constant last
    let key = |m: &Vec<usize>| match (m.len(), is_univariate(m)) {
        (0, _) => (2, 0, 0),
        (_, Some(v)) => (1, v, usize::MAX - m.len()),
        _ => (0, 0, 0),
    };
    let mut monos: Vec<Vec<usize>> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    monos.sort_by(|a, b| key(a).cmp(&key(b)).then_with(|| a.cmp(b)));
    monos.dedup();
    let col: BTreeMap<&Vec<usize>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut a = Mat::zeros(polys.len(), monos.len());
    for (r, p) in polys.iter().enumerate() {
        for (m, c) in p.terms() {
            a[(r, col[m])] = c.clone();
        }
    }
    let rref = a.rref();
    let mut out = Vec::new();
    for r in 0..rref.pivots.len() {
        let mut p = Poly::zero();
        for (j, c) in rref.matrix.row(r).iter().enumerate() {
            p.add_term(monos[j].clone(), c.clone());
        }
        let vars: Vec<usize> = p.terms().flat_map(|(m, _)| m.iter().copied()).collect();
        if p.degree() <= 1 || vars.iter().all(|&v| v == vars[0]) {
            out.push(p);
        }
    }
    out
}

fn branch(polys: Vec<Poly>, mut assign: Vec<Poly>, out: &mut Elimination, leaves: &mut usize) {
    let mut polys: Vec<Poly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    loop {
        if polys.iter().any(|p| p.degree() == 0) {
            return;
        }
        if polys.is_empty() {
            if assign.iter().all(|p| p.degree() == 0) {
                out.points
                    .push(assign.iter().map(Poly::constant_term).collect());
            } else {
                // positive-dimensional: a finite list cannot be complete
                let free: Vec<Poly> = assign.iter().filter(|p| p.degree() > 0).cloned().collect();
                out.stuck.push(free);
            }
            return;
        }
        if let Some(p) = polys.iter().find(|p| p.degree() == 1) {
            let (v, c) = p
                .terms()
                .find(|(m, _)| m.len() == 1)
                .map(|(m, c)| (m[0], c.clone()))
                .expect("degree one");
            let mut expr = Poly::zero();
            let scale = -&c.recip().expect("nonzero");
            for (m, d) in p.terms() {
                if m.as_slice() != [v] {
                    expr.add_term(m.clone(), &scale * d);
                }
            }
            let (next, a) = substitute(&polys, &assign, v, &expr);
            polys = next.into_iter().filter(|p| !p.is_zero()).collect();
            assign = a;
            continue;
        }
        let derived = consequences(&polys);
        if derived.iter().any(|p| p.degree() <= 1) {
            polys.extend(derived.into_iter().filter(|p| p.degree() <= 1));
            continue;
        }
        // split on the first univariate consequence with a quadratic bound
        let Some((v, coeffs)) = derived.iter().find_map(|p| {
            let vars: Vec<usize> = p.terms().flat_map(|(m, _)| m.iter().copied()).collect();
            if p.degree() > 2 {
                return None;
            }
            let mut c = vec![Rat::zero(); 3];
            for (m, d) in p.terms() {
                c[m.len()] = d.clone();
            }
            Some((vars[0], c))
        }) else {
            out.stuck.push(polys);
            return;
        };
        let roots = rational_roots(&coeffs).expect("pivot rows are nonzero");
        for r in roots {
            *leaves += 1;
            if *leaves > LEAF_BUDGET {
                out.stuck.push(polys);
                return;
            }
            let (next, a) = substitute(&polys, &assign, v, &Poly::constant(r));
            branch(next, a, out, leaves);
        }
        return;
    }
}
