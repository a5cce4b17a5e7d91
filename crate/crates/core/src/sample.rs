//! Seeded random maps for property suites.
//!
//! Coefficients come from `{0, ±1, ±1/2, 2}`. Coalgebra maps are built along
//! the coradical: group-likes go to group-likes, elements whose coproduct
//! touches group-likes are solved linearly, and simple blocks without
//! group-likes either collapse to `ε(·)g` or are twisted by an inner
//! automorphism of their dual algebra.
//!
//! The agreement suites at the bottom run the equivalent characterisations
//! side by side on such samples.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::actions::{
    check_crossed_hom, derived_module_structure, graph_hopf_iso, graph_of, ActionData, ActionError,
    CrossedHom,
};
use crate::diffops::{check_diffop, check_diffop_prime};
use crate::exactlin::{solve_affine, Mat, Rat};
use crate::hopf::{convolve, grouplikes, FinDimHopf, HopfError, LinMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SampleError {
    #[error("cannot sample coalgebra maps here: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

pub fn random_rat<R: Rng + ?Sized>(rng: &mut R) -> Rat {
    match rng.random_range(0..6u8) {
        0 => Rat::zero(),
        1 => Rat::one(),
        2 => -Rat::one(),
        3 => Rat::new(1, 2),
        4 => Rat::new(-1, 2),
        _ => Rat::from_int(2),
    }
}

pub fn random_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Rat> {
    (0..n).map(|_| random_rat(rng)).collect()
}

pub fn random_linear_map<R: Rng + ?Sized>(
    k: &Arc<FinDimHopf>,
    h: &Arc<FinDimHopf>,
    rng: &mut R,
) -> LinMap {
    let images: Vec<Vec<Rat>> = (0..k.dim()).map(|_| random_vector(h.dim(), rng)).collect();
    LinMap::between(k, h, &images).expect("shapes match")
}

/// Basis indices reachable from `b` through the legs of `Δ`.
fn closure(h: &FinDimHopf, b: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([b]);
    let mut stack = vec![b];
    while let Some(i) = stack.pop() {
        for (l, r, _) in h.comult_basis(i) {
            for j in [*l, *r] {
                if seen.insert(j) {
                    stack.push(j);
                }
            }
        }
    }
    seen
}

/// Inner automorphism `a ↦ uau⁻¹` of the dual algebra of the subcoalgebra on
/// `basis`, transposed into a coalgebra map; `None` when `u` is singular.
fn dual_conjugation(h: &FinDimHopf, basis: &[usize], u: &[Rat]) -> Option<Vec<Vec<Rat>>> {
    let m = basis.len();
    let pos = |b: usize| basis.iter().position(|&x| x == b).expect("closed under Δ");
    // eⁱeʲ = Σₖ coef[k][i][j] eᵏ
    let mut coef = vec![vec![vec![Rat::zero(); m]; m]; m];
    for (k, &b) in basis.iter().enumerate() {
        for (i, j, c) in h.comult_basis(b) {
            coef[k][pos(*i)][pos(*j)] += c;
        }
    }
    let left = |w: &[Rat]| {
        let mut l = Mat::zeros(m, m);
        for j in 0..m {
            for k in 0..m {
                l[(k, j)] = (0..m).map(|i| &w[i] * &coef[k][i][j]).sum();
            }
        }
        l
    };
    let right = |w: &[Rat]| {
        let mut r = Mat::zeros(m, m);
        for i in 0..m {
            for k in 0..m {
                r[(k, i)] = (0..m).map(|j| &w[j] * &coef[k][i][j]).sum();
            }
        }
        r
    };
    let unit: Vec<Rat> = basis.iter().map(|&b| h.counit_basis(b).clone()).collect();
    let lu = left(u);
    let inv = solve_affine(&lu, &unit).ok()?;
    if !inv.kernel_basis.is_empty() {
        return None;
    }
    let u_inv = inv.particular?;
    let phi = lu.mul(&right(&u_inv)).expect("square");
    // D(c_k) = Σ_l φ(eˡ)(c_k) c_l
    Some(
        (0..m)
            .map(|k| {
                let mut v = h.zero();
                for l in 0..m {
                    v[basis[l]] = phi[(k, l)].clone();
                }
                v
            })
            .collect(),
    )
}

/// A random coalgebra map `K → H`, verified before it is returned.
pub fn random_coalgebra_map<R: Rng + ?Sized>(
    k: &Arc<FinDimHopf>,
    h: &Arc<FinDimHopf>,
    rng: &mut R,
) -> Result<LinMap, SampleError> {
    let gk = grouplikes(k)?;
    let gh = grouplikes(h)?;
    if !gk.complete || !gh.complete {
        return Err(SampleError::Unsupported(String::from(
            "group-likes must be declared",
        )));
    }
    let n = k.dim();
    let mut images: Vec<Option<Vec<Rat>>> = vec![None; n];
    for &g in &gk.indices {
        images[g] = Some(h.basis_vec(gh.indices[rng.random_range(0..gh.indices.len())]));
    }
    // simple blocks first, so that linear elements may lean on them
    for b in 0..n {
        if images[b].is_some() {
            continue;
        }
        let block = closure(k, b);
        if block.iter().any(|i| gk.indices.contains(i)) {
            continue;
        }
        let basis: Vec<usize> = block.into_iter().collect();
        let twisted = if Arc::ptr_eq(k, h) || k == h {
            (0..8).find_map(|_| dual_conjugation(k, &basis, &random_vector(basis.len(), rng)))
        } else {
            None
        };
        match twisted.filter(|_| rng.random_bool(0.5)) {
            Some(cols) => {
                // left translation by a group-like is a coalgebra automorphism
                let g = h.basis_vec(gh.indices[rng.random_range(0..gh.indices.len())]);
                for (c, v) in basis.iter().zip(cols) {
                    images[*c] = Some(h.mul(&g, &v));
                }
            }
            None => {
                let g = h.basis_vec(gh.indices[rng.random_range(0..gh.indices.len())]);
                for &c in &basis {
                    images[c] = Some(g.iter().map(|x| x * k.counit_basis(c)).collect());
                }
            }
        }
    }
    while let Some(b) = (0..n).find(|&b| {
        images[b].is_none()
            && k.comult_basis(b).iter().all(|(l, r, _)| {
                (*l == b || images[*l].is_some())
                    && (*r == b || images[*r].is_some())
                    && !(*l == b && *r == b)
            })
    }) {
        // Δ(v) − Σ c·D(l)⊗D(r) = 0 and ε(v) = ε(b), linear in v
        let d = h.dim();
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let mut rhs: Vec<Rat> = Vec::new();
        let mut target = vec![Rat::zero(); d * d];
        let mut coeff = vec![vec![Rat::zero(); d]; d * d];
        for v in 0..d {
            for (p, q, c) in h.comult_basis(v) {
                coeff[p * d + q][v] += c;
            }
        }
        for (l, r, c) in k.comult_basis(b) {
            match (*l == b, *r == b) {
                (true, false) => {
                    let w = images[*r].as_ref().expect("assigned");
                    for v in 0..d {
                        for q in 0..d {
                            if !w[q].is_zero() {
                                coeff[v * d + q][v] -= c * &w[q];
                            }
                        }
                    }
                }
                (false, true) => {
                    let w = images[*l].as_ref().expect("assigned");
                    for v in 0..d {
                        for p in 0..d {
                            if !w[p].is_zero() {
                                coeff[p * d + v][v] -= c * &w[p];
                            }
                        }
                    }
                }
                _ => {
                    let (wl, wr) = (
                        images[*l].as_ref().expect("assigned"),
                        images[*r].as_ref().expect("assigned"),
                    );
                    for p in 0..d {
                        for q in 0..d {
                            target[p * d + q] += c * &(&wl[p] * &wr[q]);
                        }
                    }
                }
            }
        }
        rows.extend(coeff);
        rhs.extend(target);
        rows.push((0..d).map(|v| h.counit_basis(v).clone()).collect());
        rhs.push(k.counit_basis(b).clone());
        let a = Mat::from_rows(rows).map_err(HopfError::from)?;
        let sol = solve_affine(&a, &rhs).map_err(HopfError::from)?;
        let Some(mut v) = sol.particular else {
            return Err(SampleError::Unsupported(format!(
                "no coalgebra image for {}",
                k.label(b)
            )));
        };
        for kv in &sol.kernel_basis {
            let t = random_rat(rng);
            for (x, y) in v.iter_mut().zip(kv) {
                *x += &t * y;
            }
        }
        images[b] = Some(v);
    }
    let images: Vec<Vec<Rat>> = images
        .into_iter()
        .enumerate()
        .map(|(b, v)| {
            v.ok_or_else(|| SampleError::Unsupported(format!("{} is not reached", k.label(b))))
        })
        .collect::<Result<_, _>>()?;
    let map = LinMap::between(k, h, &images)?;
    if let Some(w) = map.coalgebra_hom_witness() {
        return Err(SampleError::Unsupported(format!(
            "sampled map fails Δ at {}",
            k.label(w)
        )));
    }
    Ok(map)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffopTally {
    pub maps: usize,
    /// Maps accepted by all three characterisations.
    pub positive: usize,
    /// Sample index with the verdicts `(check_diffop, convolution, primed)`.
    pub disagreements: Vec<(usize, [bool; 3])>,
}

/// `check_diffop(D)`, `convolve(D, id)` multiplicative, and the primed
/// identity, on `count` random coalgebra maps `H → H`.
pub fn diffop_agreement_suite(
    h: &Arc<FinDimHopf>,
    count: usize,
    seed: u64,
) -> Result<DiffopTally, SampleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = LinMap::identity(h);
    let mut tally = DiffopTally::default();
    for i in 0..count {
        let d = random_coalgebra_map(h, h, &mut rng)?;
        let verdicts = [
            check_diffop(&d).is_ok(),
            convolve(&d, &id)?.is_algebra_hom(),
            check_diffop_prime(&d),
        ];
        tally.maps += 1;
        if verdicts.iter().all(|&v| v == verdicts[0]) {
            tally.positive += usize::from(verdicts[0]);
        } else {
            tally.disagreements.push((i, verdicts));
        }
    }
    Ok(tally)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossedTally {
    pub maps: usize,
    pub positive: usize,
    /// Sample index with the verdicts `(check_crossed_hom, graph closed, derived module)`.
    pub disagreements: Vec<(usize, [bool; 3])>,
    /// Positives on cocommutative `K` where `Ψ` and `ε⊗id` were verified mutually inverse.
    pub graph_isos: usize,
    pub graph_iso_failures: Vec<(usize, String)>,
}

/// `check_crossed_hom`, closure of the graph, and the derived module test, on
/// `count` random coalgebra maps `K → H`.
pub fn crossed_agreement_suite(
    a: &ActionData,
    count: usize,
    seed: u64,
) -> Result<CrossedTally, SampleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (k, h) = (a.acting(), a.target());
    let mut tally = CrossedTally::default();
    for i in 0..count {
        let pi = random_coalgebra_map(k, h, &mut rng)?;
        let verdicts = [
            check_crossed_hom(&pi, a)?,
            graph_of(&pi, a)?.is_subalgebra(),
            derived_module_structure(&pi, a)?.is_module(),
        ];
        tally.maps += 1;
        if !verdicts.iter().all(|&v| v == verdicts[0]) {
            tally.disagreements.push((i, verdicts));
            continue;
        }
        if verdicts[0] {
            tally.positive += 1;
            if k.is_cocommutative() {
                match CrossedHom::verify(pi, a.clone()).and_then(|c| graph_hopf_iso(&c)) {
                    Ok(_) => tally.graph_isos += 1,
                    Err(e) => tally.graph_iso_failures.push((i, format!("{e}"))),
                }
            }
        }
    }
    Ok(tally)
}
