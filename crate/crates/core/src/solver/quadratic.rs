use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::Rat;
use crate::groups::FinGroup;

use super::SolverError;

/// The characters of an elementary abelian 2-group, each as its `±1` values.
pub fn characters(a: &FinGroup) -> Result<Vec<Vec<i8>>, SolverError> {
    let n = a.order();
    let e = a.identity();
    if !a.is_abelian() || (0..n).any(|g| a.mul(g, g) != e) {
        return Err(SolverError::NotExponentTwo(a.name().into()));
    }
    let gens = a.minimal_generating_set();
    let mut out = Vec::with_capacity(n);
    for signs in 0u32..(1 << gens.len()) {
        // spread the generator signs over the group by closure
        let mut chi: Vec<Option<i8>> = vec![None; n];
        chi[e] = Some(1);
        let mut frontier = vec![e];
        while let Some(g) = frontier.pop() {
            for (k, &s) in gens.iter().enumerate() {
                let h = a.mul(g, s);
                if chi[h].is_none() {
                    let sign = if signs & (1 << k) != 0 { -1 } else { 1 };
                    chi[h] = Some(chi[g].expect("visited") * sign);
                    frontier.push(h);
                }
            }
        }
        out.push(
            chi.into_iter()
                .map(|c| c.expect("generators span"))
                .collect(),
        );
    }
    Ok(out)
}

/// `p ↦ (χ(p))_χ`.
pub fn character_transform(chars: &[Vec<i8>], p: &[Rat]) -> Vec<Rat> {
    chars
        .iter()
        .map(|chi| {
            let mut t = Rat::zero();
            for (g, c) in p.iter().enumerate() {
                if chi[g] > 0 {
                    t += c;
                } else {
                    t -= c;
                }
            }
            t
        })
        .collect()
}

/// Inverse of [`character_transform`].
pub fn inverse_character_transform(chars: &[Vec<i8>], t: &[Rat]) -> Vec<Rat> {
    let n = chars.len();
    let scale = Rat::new(1, n as i64);
    (0..n)
        .map(|g| {
            let mut acc = Rat::zero();
            for (chi, v) in chars.iter().zip(t) {
                if chi[g] > 0 {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
            &acc * &scale
        })
        .collect()
}

/// Rational roots of `c₀ + c₁t + c₂t²`. Returns `None` for the zero polynomial.
pub fn rational_roots(coeffs: &[Rat]) -> Option<Vec<Rat>> {
    let c = |i: usize| coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
    let (c0, c1, c2) = (c(0), c(1), c(2));
    if !c2.is_zero() {
        let disc = &(&c1 * &c1) - &(&(&Rat::from_int(4) * &c2) * &c0);
        let Some(root) = disc.sqrt_exact() else {
            return Some(Vec::new());
        };
        let two_a = &Rat::from_int(2) * &c2;
        let mut roots = vec![&(&(-&c1) + &root) / &two_a, &(&(-&c1) - &root) / &two_a];
        roots.sort();
        roots.dedup();
        Some(roots)
    } else if !c1.is_zero() {
        Some(vec![&(-&c0) / &c1])
    } else if !c0.is_zero() {
        Some(Vec::new())
    } else {
        None
    }
}

/// Every `p ∈ kA` with `q(p) = r`, for `A` elementary abelian of exponent 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSolutions {
    /// In canonical order: lexicographic on character coordinates.
    pub solutions: Vec<Vec<Rat>>,
    /// Characters whose equation `q(t) = r̂(χ)` has no rational root.
    pub no_rational_solution: Vec<usize>,
}

/// Solves `q(p) = r` in `kA` by the character transform: `kA` is a product of
/// copies of the rationals, one per character, so the equation splits.
pub fn solve_quadratic_in_group_algebra(
    a: &FinGroup,
    q: &[Rat],
    r: &[Rat],
) -> Result<QuadraticSolutions, SolverError> {
    if q.len() > 3 && q[3..].iter().any(|c| !c.is_zero()) {
        return Err(SolverError::Degree(q.len() - 1));
    }
    if r.len() != a.order() {
        return Err(SolverError::Malformed(
            "right-hand side has the wrong length".into(),
        ));
    }
    let chars = characters(a)?;
    let rhat = character_transform(&chars, r);
    let mut per_char: Vec<Vec<Rat>> = Vec::with_capacity(chars.len());
    let mut no_rational_solution = Vec::new();
    for (k, rk) in rhat.iter().enumerate() {
        let mut coeffs: Vec<Rat> = q.iter().take(3).cloned().collect();
        coeffs.resize(3, Rat::zero());
        coeffs[0] = &coeffs[0] - rk;
        match rational_roots(&coeffs) {
            None => {
                return Err(SolverError::Malformed(
                    "q − r̂(χ) vanishes identically".into(),
                ))
            }
            Some(roots) => {
                if roots.is_empty() {
                    no_rational_solution.push(k);
                }
                per_char.push(roots);
            }
        }
    }
    let solutions = if no_rational_solution.is_empty() {
        combinations(&per_char)
            .into_iter()
            .map(|t| inverse_character_transform(&chars, &t))
            .collect()
    } else {
        Vec::new()
    };
    Ok(QuadraticSolutions {
        solutions,
        no_rational_solution,
    })
}

pub(crate) fn combinations(per: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut out: Vec<Vec<Rat>> = vec![Vec::new()];
    for options in per {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect();
    }
    out
}
