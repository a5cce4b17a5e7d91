use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::exactlin::{zero_vec, Mat, Rat, Subspace};
use crate::hopf::{validate_hopf, FinDimHopf, LinMap, SparseVec};

use super::{
    add_scaled, require_cocommutative, require_valid, ActionData, ActionError, CrossedHom,
};

/// Product in `H#K` of vectors over the basis `x#a` at index `x*dim(K) + a`:
/// `(x#a)(y#b) = x(a₁⇀y) # a₂b`.
pub fn smash_mul(a: &ActionData, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
    let (k, h) = (a.acting(), a.target());
    let dk = k.dim();
    let mut out = zero_vec(h.dim() * dk);
    for (p, cu) in u.iter().enumerate() {
        if cu.is_zero() {
            continue;
        }
        let (x, ka) = (p / dk, p % dk);
        for (q, cv) in v.iter().enumerate() {
            if cv.is_zero() {
                continue;
            }
            let (y, kb) = (q / dk, q % dk);
            let c = cu * cv;
            for (i, j, d) in k.comult_basis(ka) {
                let left = h.mul(&h.basis_vec(x), a.act_basis(*i, y));
                let right = k.mul(&k.basis_vec(*j), &k.basis_vec(kb));
                let cd = &c * d;
                for (s, ls) in left.iter().enumerate() {
                    if ls.is_zero() {
                        continue;
                    }
                    for (t, rt) in right.iter().enumerate() {
                        if !rt.is_zero() {
                            out[s * dk + t] += &cd * &(ls * rt);
                        }
                    }
                }
            }
        }
    }
    out
}

/// `x ⊗ a` as a vector of `H#K`.
pub(crate) fn pure_tensor(x: &[Rat], a: &[Rat]) -> Vec<Rat> {
    let mut out = Vec::with_capacity(x.len() * a.len());
    for p in x {
        for q in a {
            out.push(p * q);
        }
    }
    out
}

/// The smash product Hopf algebra `H#K`. Requires a module-bialgebra action
/// and cocommutative `K`; the result is validated before it is returned.
pub fn smash_product(a: &ActionData) -> Result<FinDimHopf, ActionError> {
    let (k, h) = (a.acting(), a.target());
    require_cocommutative(k)?;
    require_valid(a, true)?;
    let (dh, dk) = (h.dim(), k.dim());
    let n = dh * dk;
    let basis: Vec<String> = (0..n)
        .map(|p| format!("{}#{}", h.label(p / dk), k.label(p % dk)))
        .collect();
    let mult: Vec<SparseVec> = (0..n * n)
        .map(|idx| {
            let (p, q) = (idx / n, idx % n);
            let mut e_p = zero_vec(n);
            e_p[p] = Rat::one();
            let mut e_q = zero_vec(n);
            e_q[q] = Rat::one();
            smash_mul(a, &e_p, &e_q)
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect()
        })
        .collect();
    let unit = pure_tensor(&h.one(), &k.one());
    let comult = (0..n)
        .map(|p| {
            let (x, ka) = (p / dk, p % dk);
            let mut terms = Vec::new();
            for (x1, x2, c) in h.comult_basis(x) {
                for (a1, a2, d) in k.comult_basis(ka) {
                    terms.push((x1 * dk + a1, x2 * dk + a2, c * d));
                }
            }
            terms
        })
        .collect();
    let counit = (0..n)
        .map(|p| h.counit_basis(p / dk) * k.counit_basis(p % dk))
        .collect();
    let mut antipode = Mat::zeros(n, n);
    for p in 0..n {
        let (x, ka) = (p / dk, p % dk);
        let sx = h.antipode(&h.basis_vec(x));
        let mut col = zero_vec(n);
        for (a1, a2, c) in k.comult_basis(ka) {
            let left = a.act(&k.antipode(&k.basis_vec(*a1)), &sx);
            let right = k.antipode(&k.basis_vec(*a2));
            add_scaled(&mut col, c, &pure_tensor(&left, &right));
        }
        antipode.set_col(p, &col);
    }
    let coradical = match (h.coradical_group_basis(), k.coradical_group_basis()) {
        (Some(gh), Some(gk)) => {
            let cand: Vec<usize> = gh
                .iter()
                .flat_map(|&x| gk.iter().map(move |&b| x * dk + b))
                .collect();
            let closed = cand.iter().all(|&p| {
                cand.iter().all(|&q| {
                    let prod = &mult[p * n + q];
                    prod.len() == 1 && prod[0].1.is_one() && cand.contains(&prod[0].0)
                })
            });
            closed.then_some(cand)
        }
        _ => None,
    };
    let s = FinDimHopf::from_sparse(
        format!("{}#{}", h.name(), k.name()),
        basis,
        mult,
        unit,
        comult,
        counit,
        antipode,
        coradical,
    )?;
    let rep = validate_hopf(&s);
    if let Some(f) = rep.failures().next() {
        return Err(ActionError::Verification(format!(
            "smash product fails {} at {:?}",
            f.axiom,
            f.witness.as_deref().unwrap_or(&[])
        )));
    }
    Ok(s)
}

/// `x ↦ x#1` and `a ↦ 1#a`, checked to be algebra maps.
pub fn smash_embeddings(
    a: &ActionData,
    smash: &Arc<FinDimHopf>,
) -> Result<(LinMap, LinMap), ActionError> {
    let (k, h) = (a.acting(), a.target());
    let eh: Vec<Vec<Rat>> = (0..h.dim())
        .map(|x| pure_tensor(&h.basis_vec(x), &k.one()))
        .collect();
    let ek: Vec<Vec<Rat>> = (0..k.dim())
        .map(|b| pure_tensor(&h.one(), &k.basis_vec(b)))
        .collect();
    let eh = LinMap::between(h, smash, &eh)?;
    let ek = LinMap::between(k, smash, &ek)?;
    if let Some(w) = eh.algebra_hom_witness() {
        return Err(ActionError::Verification(format!(
            "H → H#K not multiplicative at {w:?}"
        )));
    }
    if let Some(w) = ek.algebra_hom_witness() {
        return Err(ActionError::Verification(format!(
            "K → H#K not multiplicative at {w:?}"
        )));
    }
    Ok((eh, ek))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphReport {
    /// Echelon basis of `Gr_π = span{π(a₁)#a₂}` in `H#K`.
    pub basis: Vec<Vec<Rat>>,
    /// First pair of spanning vectors `(a, b)` whose product leaves the graph.
    pub escape: Option<(usize, usize)>,
}

impl GraphReport {
    pub fn is_subalgebra(&self) -> bool {
        self.escape.is_none()
    }
}

/// The spanning vectors `(π⊗id)Δ(e_a)`.
fn graph_vectors(pi: &LinMap, a: &ActionData) -> Vec<Vec<Rat>> {
    let k = a.acting();
    let n = a.target().dim() * k.dim();
    (0..k.dim())
        .map(|p| {
            let mut v = zero_vec(n);
            for (i, j, c) in k.comult_basis(p) {
                add_scaled(&mut v, c, &pure_tensor(&pi.image(*i), &k.basis_vec(*j)));
            }
            v
        })
        .collect()
}

/// Computes `Gr_π` and tests closure under the smash multiplication.
pub fn graph_of(pi: &LinMap, a: &ActionData) -> Result<GraphReport, ActionError> {
    if let Some(w) = pi.coalgebra_hom_witness() {
        return Err(ActionError::NotCoalgebraHom(w));
    }
    let vs = graph_vectors(pi, a);
    let n = a.target().dim() * a.acting().dim();
    let space = Subspace::span(n, &vs);
    let mut escape = None;
    'outer: for (i, u) in vs.iter().enumerate() {
        for (j, v) in vs.iter().enumerate() {
            if !space.contains(&smash_mul(a, u, v)) {
                escape = Some((i, j));
                break 'outer;
            }
        }
    }
    Ok(GraphReport {
        basis: space.basis().to_vec(),
        escape,
    })
}

#[derive(Clone, Debug)]
pub struct GraphIso {
    pub smash: Arc<FinDimHopf>,
    /// `Ψ(a) = π(a₁)#a₂`.
    pub psi: LinMap,
    /// `ε⊗id: H#K → K`.
    pub inverse: LinMap,
    pub graph: GraphReport,
}

/// Builds `Ψ: K → Gr_π` and verifies it is a Hopf isomorphism onto the graph
/// with inverse `ε⊗id`.
pub fn graph_hopf_iso(c: &CrossedHom) -> Result<GraphIso, ActionError> {
    let (pi, a) = (c.map(), c.action());
    let (k, h) = (a.acting(), a.target());
    require_cocommutative(k)?;
    let smash = Arc::new(smash_product(a)?);
    let psi = LinMap::between(k, &smash, &graph_vectors(pi, a))?;
    let dk = k.dim();
    let inv_cols: Vec<Vec<Rat>> = (0..smash.dim())
        .map(|p| {
            let mut v = zero_vec(dk);
            v[p % dk] = h.counit_basis(p / dk).clone();
            v
        })
        .collect();
    let inverse = LinMap::between(&smash, k, &inv_cols)?;
    let graph = graph_of(pi, a)?;
    if !graph.is_subalgebra() {
        return Err(ActionError::Verification(
            "graph is not a subalgebra".into(),
        ));
    }
    if let Some(w) = psi.algebra_hom_witness() {
        return Err(ActionError::Verification(format!(
            "Ψ not multiplicative at {w:?}"
        )));
    }
    if let Some(w) = psi.coalgebra_hom_witness() {
        return Err(ActionError::Verification(format!(
            "Ψ not a coalgebra map at {w}"
        )));
    }
    let s_psi = LinMap::antipode(&smash).compose(&psi)?;
    let psi_s = psi.compose(&LinMap::antipode(k))?;
    if s_psi != psi_s {
        return Err(ActionError::Verification(
            "Ψ does not commute with the antipodes".into(),
        ));
    }
    if inverse.compose(&psi)? != LinMap::identity(k) {
        return Err(ActionError::Verification("(ε⊗id)∘Ψ ≠ id".into()));
    }
    for v in &graph.basis {
        if psi.apply(&inverse.apply(v)) != *v {
            return Err(ActionError::Verification(
                "Ψ∘(ε⊗id) ≠ id on the graph".into(),
            ));
        }
    }
    let image = Subspace::span(
        smash.dim(),
        &(0..dk).map(|p| psi.image(p)).collect::<Vec<_>>(),
    );
    if image.dimension() != graph.basis.len() || graph.basis.iter().any(|v| !image.contains(v)) {
        return Err(ActionError::Verification("Ψ is not onto the graph".into()));
    }
    Ok(GraphIso {
        smash,
        psi,
        inverse,
        graph,
    })
}
