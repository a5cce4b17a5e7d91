//! Finite-dimensional Lie algebras by structure constants: crossed homomorphisms,
//! difference operators, derived actions and semidirect products.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::{unit_vec, zero_vec, Mat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("malformed Lie algebra: {0}")]
    Malformed(String),
    #[error("bracket is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails at ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A Lie algebra with bracket `[e_i, e_j]` stored densely at `i*n + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinLie {
    name: String,
    labels: Vec<String>,
    bracket: Vec<Vec<Rat>>,
}

impl FinLie {
    /// Builds from brackets of pairs `i < j`; antisymmetry fills the rest.
    pub fn from_upper(
        name: impl Into<String>,
        labels: Vec<String>,
        upper: &[(usize, usize, Vec<Rat>)],
    ) -> Result<Self, LieError> {
        let n = labels.len();
        let mut bracket = vec![zero_vec(n); n * n];
        for (i, j, v) in upper {
            if *i >= *j || *j >= n {
                return Err(LieError::Malformed(format!(
                    "bracket key ({i}, {j}) must satisfy i < j < {n}"
                )));
            }
            if v.len() != n {
                return Err(LieError::Malformed(format!(
                    "bracket [{i}, {j}] has length {}",
                    v.len()
                )));
            }
            bracket[i * n + j] = v.clone();
            bracket[j * n + i] = v.iter().map(|c| -c).collect();
        }
        Self::new(name, labels, bracket)
    }

    /// Full bracket table; validates antisymmetry and Jacobi.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        bracket: Vec<Vec<Rat>>,
    ) -> Result<Self, LieError> {
        let n = labels.len();
        if bracket.len() != n * n || bracket.iter().any(|v| v.len() != n) {
            return Err(LieError::Malformed(format!(
                "bracket table must hold {} vectors of length {n}",
                n * n
            )));
        }
        let l = FinLie {
            name: name.into(),
            labels,
            bracket,
        };
        for i in 0..n {
            for j in i..n {
                let s: Vec<Rat> = l.bracket[i * n + j]
                    .iter()
                    .zip(&l.bracket[j * n + i])
                    .map(|(a, b)| a + b)
                    .collect();
                if s.iter().any(|c| !c.is_zero()) {
                    return Err(LieError::NotAntisymmetric(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (unit_vec(n, i), unit_vec(n, j), unit_vec(n, k));
                    let a = l.bracket(&x, &l.bracket(&y, &z));
                    let b = l.bracket(&y, &l.bracket(&z, &x));
                    let c = l.bracket(&z, &l.bracket(&x, &y));
                    if a.iter()
                        .zip(&b)
                        .zip(&c)
                        .any(|((p, q), r)| !(p + q + r).is_zero())
                    {
                        return Err(LieError::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(l)
    }

    pub fn abelian(name: impl Into<String>, labels: Vec<String>) -> Self {
        let n = labels.len();
        FinLie {
            name: name.into(),
            labels,
            bracket: vec![zero_vec(n); n * n],
        }
    }

    /// The 2-dimensional nonabelian algebra `[a, b] = b`.
    pub fn two_dim_nonabelian() -> Self {
        let labels = vec![String::from("a"), String::from("b")];
        FinLie::from_upper("aff1", labels, &[(0, 1, vec![Rat::zero(), Rat::one()])])
            .expect("valid Lie algebra")
    }

    /// `sl2` with basis `e, f, h`: `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`.
    pub fn sl2() -> Self {
        let labels = ["e", "f", "h"].map(String::from).to_vec();
        let r = Rat::from_int;
        FinLie::from_upper(
            "sl2",
            labels,
            &[
                (0, 1, vec![r(0), r(0), r(1)]),
                (0, 2, vec![r(-2), r(0), r(0)]),
                (1, 2, vec![r(0), r(2), r(0)]),
            ],
        )
        .expect("valid Lie algebra")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rat] {
        &self.bracket[i * self.dim() + j]
    }

    pub fn bracket(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, c) in out.iter_mut().zip(&self.bracket[i * n + j]) {
                    if !c.is_zero() {
                        *o += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_u = [u, ·]`.
    pub fn ad(&self, u: &[Rat]) -> Mat {
        let n = self.dim();
        let cols: Vec<Vec<Rat>> = (0..n).map(|j| self.bracket(u, &unit_vec(n, j))).collect();
        Mat::from_columns(n, &cols).expect("square")
    }

    /// Upper-triangle bracket entries `(i, j, [e_i, e_j])` with `i < j`.
    pub fn upper_brackets(&self) -> Vec<(usize, usize, Vec<Rat>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push((i, j, self.bracket[i * n + j].clone()));
            }
        }
        out
    }

    /// Is the linear map `f` (square matrix) a Lie endomorphism?
    pub fn is_endomorphism(&self, f: &Mat) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = f.apply(self.bracket_basis(i, j)).expect("shape");
                lhs == self.bracket(&f.col(i), &f.col(j))
            })
        })
    }

    pub fn is_derivation(&self, d: &Mat) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = d.apply(self.bracket_basis(i, j)).expect("shape");
                let a = self.bracket(&d.col(i), &unit_vec(n, j));
                let b = self.bracket(&unit_vec(n, i), &d.col(j));
                lhs.iter()
                    .zip(a.iter().zip(&b))
                    .all(|(l, (x, y))| *l == x + y)
            })
        })
    }
}

/// An action `φ: g → Der(h)`, `phi[i]` the matrix of `φ(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAction {
    acting: Arc<FinLie>,
    target: Arc<FinLie>,
    phi: Vec<Mat>,
}

impl LieAction {
    /// Validates derivation and homomorphism axioms eagerly.
    pub fn new(acting: Arc<FinLie>, target: Arc<FinLie>, phi: Vec<Mat>) -> Result<Self, LieError> {
        let (m, n) = (acting.dim(), target.dim());
        if phi.len() != m || phi.iter().any(|p| p.rows() != n || p.cols() != n) {
            return Err(LieError::InvalidAction(format!(
                "need {m} matrices of size {n}x{n}"
            )));
        }
        for (i, p) in phi.iter().enumerate() {
            if !target.is_derivation(p) {
                return Err(LieError::InvalidAction(format!(
                    "φ({}) is not a derivation",
                    acting.labels()[i]
                )));
            }
        }
        let act = LieAction {
            acting,
            target,
            phi,
        };
        for i in 0..m {
            for j in 0..m {
                let lhs = act.phi_of(act.acting.bracket_basis(i, j));
                let rhs = act.phi[i]
                    .mul(&act.phi[j])
                    .and_then(|a| a.sub(&act.phi[j].mul(&act.phi[i])?))
                    .expect("square");
                if lhs != rhs {
                    return Err(LieError::InvalidAction(format!(
                        "φ is not a homomorphism at ({}, {})",
                        act.acting.labels()[i],
                        act.acting.labels()[j]
                    )));
                }
            }
        }
        Ok(act)
    }

    pub fn adjoint(g: &Arc<FinLie>) -> Self {
        let n = g.dim();
        LieAction {
            acting: g.clone(),
            target: g.clone(),
            phi: (0..n).map(|i| g.ad(&unit_vec(n, i))).collect(),
        }
    }

    pub fn trivial(acting: &Arc<FinLie>, target: &Arc<FinLie>) -> Self {
        LieAction {
            acting: acting.clone(),
            target: target.clone(),
            phi: vec![Mat::zeros(target.dim(), target.dim()); acting.dim()],
        }
    }

    pub fn acting(&self) -> &Arc<FinLie> {
        &self.acting
    }

    pub fn target(&self) -> &Arc<FinLie> {
        &self.target
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.phi
    }

    /// Matrix of `φ(x)` for an arbitrary `x ∈ g`.
    pub fn phi_of(&self, x: &[Rat]) -> Mat {
        let n = self.target.dim();
        let mut m = Mat::zeros(n, n);
        for (c, p) in x.iter().zip(&self.phi) {
            if !c.is_zero() {
                m = m.add(&p.scale(c)).expect("same shape");
            }
        }
        m
    }

    pub fn act(&self, x: &[Rat], u: &[Rat]) -> Vec<Rat> {
        self.phi_of(x).apply(u).expect("shape")
    }
}

fn check_shape(d: &Mat, rows: usize, cols: usize) -> Result<(), LieError> {
    if d.rows() != rows || d.cols() != cols {
        return Err(LieError::Malformed(format!(
            "map is {}x{}, expected {rows}x{cols}",
            d.rows(),
            d.cols()
        )));
    }
    Ok(())
}

/// First basis pair where `d[x,y] = φ(x)d(y) − φ(y)d(x) + [d(x),d(y)]` fails.
pub fn lie_crossed_hom_witness(d: &Mat, a: &LieAction) -> Result<Option<(usize, usize)>, LieError> {
    let (g, h) = (&a.acting, &a.target);
    check_shape(d, h.dim(), g.dim())?;
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let lhs = d.apply(g.bracket_basis(i, j)).expect("shape");
            let (dx, dy) = (d.col(i), d.col(j));
            let t1 = a.phi[i].apply(&dy).expect("shape");
            let t2 = a.phi[j].apply(&dx).expect("shape");
            let t3 = h.bracket(&dx, &dy);
            let ok = (0..h.dim()).all(|k| lhs[k] == &(&t1[k] - &t2[k]) + &t3[k]);
            if !ok {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn check_lie_crossed_hom(d: &Mat, a: &LieAction) -> Result<bool, LieError> {
    Ok(lie_crossed_hom_witness(d, a)?.is_none())
}

/// First basis pair where `d[x,y] = [d(x),y] + [x,d(y)] + [d(x),d(y)]` fails.
pub fn lie_diffop_witness(d: &Mat, g: &FinLie) -> Result<Option<(usize, usize)>, LieError> {
    let n = g.dim();
    check_shape(d, n, n)?;
    for i in 0..n {
        for j in 0..n {
            let lhs = d.apply(g.bracket_basis(i, j)).expect("shape");
            let (dx, dy) = (d.col(i), d.col(j));
            let a = g.bracket(&dx, &unit_vec(n, j));
            let b = g.bracket(&unit_vec(n, i), &dy);
            let c = g.bracket(&dx, &dy);
            if (0..n).any(|k| lhs[k] != &(&a[k] + &b[k]) + &c[k]) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn check_lie_diffop(d: &Mat, g: &FinLie) -> Result<bool, LieError> {
    Ok(lie_diffop_witness(d, g)?.is_none())
}

/// `d ↦ d + id`.
pub fn lie_diff_to_endo(d: &Mat) -> Mat {
    d.add(&Mat::identity(d.rows())).expect("square")
}

/// `f ↦ f − id`.
pub fn lie_endo_to_diff(f: &Mat) -> Mat {
    f.sub(&Mat::identity(f.rows())).expect("square")
}

/// Outcome of testing both directions of the bijection on one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieBijectionCheck {
    pub is_diffop: bool,
    pub is_endo: bool,
    pub round_trip: bool,
}

/// For a map `d`, compares "d is a difference operator" with "d + id is an endomorphism".
pub fn lie_endo_bijection(d: &Mat, g: &FinLie) -> Result<LieBijectionCheck, LieError> {
    let f = lie_diff_to_endo(d);
    Ok(LieBijectionCheck {
        is_diffop: check_lie_diffop(d, g)?,
        is_endo: g.is_endomorphism(&f),
        round_trip: lie_endo_to_diff(&f) == *d,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedLieAction {
    /// `φ_d(x) = φ(x) + ad_{d(x)}`.
    pub action: LieAction,
    /// `−d`, a crossed homomorphism for `φ_d`.
    pub derived: Mat,
}

pub fn derived_lie_action(d: &Mat, a: &LieAction) -> Result<DerivedLieAction, LieError> {
    if let Some((i, j)) = lie_crossed_hom_witness(d, a)? {
        return Err(LieError::Precondition(format!(
            "not a crossed homomorphism at ({i}, {j})"
        )));
    }
    let h = &a.target;
    let phi = (0..a.acting.dim())
        .map(|i| a.phi[i].add(&h.ad(&d.col(i))).expect("same shape"))
        .collect();
    let action = LieAction::new(a.acting.clone(), h.clone(), phi)?;
    let derived = d.scale(&-Rat::one());
    if let Some((i, j)) = lie_crossed_hom_witness(&derived, &action)? {
        return Err(LieError::Precondition(format!("−d fails at ({i}, {j})")));
    }
    Ok(DerivedLieAction { action, derived })
}

/// `h⋊g` on the basis `h` then `g`, with
/// `[(u,x),(v,y)] = ([u,v] + φ(x)v − φ(y)u, [x,y])`.
pub fn semidirect(a: &LieAction) -> Result<FinLie, LieError> {
    let (g, h) = (&a.acting, &a.target);
    let (m, n) = (g.dim(), h.dim());
    let dim = n + m;
    let split = |w: &[Rat]| (w[..n].to_vec(), w[n..].to_vec());
    let mut bracket = vec![zero_vec(dim); dim * dim];
    for p in 0..dim {
        for q in 0..dim {
            let (u, x) = split(&unit_vec(dim, p));
            let (v, y) = split(&unit_vec(dim, q));
            let uv = h.bracket(&u, &v);
            let xv = a.act(&x, &v);
            let yu = a.act(&y, &u);
            let xy = g.bracket(&x, &y);
            let mut out: Vec<Rat> = (0..n).map(|k| &(&uv[k] + &xv[k]) - &yu[k]).collect();
            out.extend(xy);
            bracket[p * dim + q] = out;
        }
    }
    let mut labels: Vec<String> = h.labels().iter().map(|l| format!("{l}#")).collect();
    labels.extend(g.labels().iter().map(|l| format!("#{l}")));
    FinLie::new(format!("{}x|{}", h.name(), g.name()), labels, bracket)
}

/// Embeddings `h → h⋊g` and `g → h⋊g` as matrices.
pub fn semidirect_embeddings(a: &LieAction) -> (Mat, Mat) {
    let (m, n) = (a.acting.dim(), a.target.dim());
    let mut eh = Mat::zeros(n + m, n);
    for i in 0..n {
        eh[(i, i)] = Rat::one();
    }
    let mut eg = Mat::zeros(n + m, m);
    for i in 0..m {
        eg[(n + i, i)] = Rat::one();
    }
    (eh, eg)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieGraphCheck {
    /// Basis of `Gr_d = {(d(x), x)}` in `h⋊g`.
    pub graph_basis: Vec<Vec<Rat>>,
    /// First basis pair whose bracket leaves the graph.
    pub escape: Option<(usize, usize)>,
}

impl LieGraphCheck {
    pub fn closed(&self) -> bool {
        self.escape.is_none()
    }
}

/// Tests whether the graph of `d` is a subalgebra of `h⋊g`.
pub fn lie_graph_check(d: &Mat, a: &LieAction) -> Result<LieGraphCheck, LieError> {
    let (g, h) = (&a.acting, &a.target);
    check_shape(d, h.dim(), g.dim())?;
    let sd = semidirect(a)?;
    let n = h.dim();
    let graph: Vec<Vec<Rat>> = (0..g.dim())
        .map(|i| {
            let mut v = d.col(i);
            v.extend(unit_vec(g.dim(), i));
            v
        })
        .collect();
    // Graph vectors are determined by their g-part, so membership means
    // the h-part equals d applied to the g-part.
    let in_graph = |w: &[Rat]| d.apply(&w[n..]).expect("shape") == w[..n];
    for i in 0..graph.len() {
        for j in 0..graph.len() {
            if !in_graph(&sd.bracket(&graph[i], &graph[j])) {
                return Ok(LieGraphCheck {
                    graph_basis: graph,
                    escape: Some((i, j)),
                });
            }
        }
    }
    Ok(LieGraphCheck {
        graph_basis: graph,
        escape: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Mat {
        Mat::from_int_rows(rows)
    }

    #[test]
    fn weight_one_identity_basics() {
        let g = FinLie::two_dim_nonabelian();
        assert!(check_lie_diffop(&Mat::zeros(2, 2), &g).unwrap());
        assert!(check_lie_diffop(&m(&[&[-1, 0], &[0, -1]]), &g).unwrap());
        assert!(!check_lie_diffop(&Mat::identity(2), &g).unwrap());
    }

    #[test]
    fn affine_endomorphism_family() {
        // f(a) = a + βb, f(b) = b with β = 3/2.
        let g = FinLie::two_dim_nonabelian();
        let mut f = Mat::identity(2);
        f[(1, 0)] = Rat::new(3, 2);
        assert!(g.is_endomorphism(&f));
        let chk = lie_endo_bijection(&lie_endo_to_diff(&f), &g).unwrap();
        assert!(chk.is_diffop && chk.is_endo && chk.round_trip);
    }

    #[test]
    fn one_dim_on_one_dim_is_nonabelian() {
        let x = Arc::new(FinLie::abelian("x", vec!["x".into()]));
        let u = Arc::new(FinLie::abelian("u", vec!["u".into()]));
        let act = LieAction::new(x, u, vec![Mat::identity(1)]).unwrap();
        let sd = semidirect(&act).unwrap();
        // [(0,x), (u,0)] = (φ(x)u, 0) = (u, 0)
        assert_eq!(sd.bracket_basis(1, 0), &[Rat::one(), Rat::zero()]);
    }
}
