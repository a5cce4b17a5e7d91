//! Hopf actions, crossed homomorphisms, smash products and graphs.

mod crossed;
mod derived;
mod smash;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

pub use crossed::{
    check_crossed_hom, crossed_hom_properties, crossed_hom_witness, derived_module_structure,
    CrossedHom, CrossedHomProperties, DerivedModuleReport,
};
pub use derived::{derived_action, DerivedAction};
pub use smash::{
    graph_hopf_iso, graph_of, smash_embeddings, smash_mul, smash_product, GraphIso, GraphReport,
};

use crate::exactlin::{zero_vec, Rat, SparseTensor};
use crate::groups::GroupAction;
use crate::hopf::{FinDimHopf, HopfError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("malformed action: {0}")]
    Malformed(String),
    #[error("action fails {axiom} at {witness:?}")]
    InvalidAction {
        axiom: ActionAxiom,
        witness: Vec<usize>,
    },
    #[error("map is not a coalgebra homomorphism at basis element {0}")]
    NotCoalgebraHom(usize),
    #[error("`{0}` is not cocommutative (witness basis element {1})")]
    NotCocommutative(String, usize),
    #[error("not a crossed homomorphism at {0:?}")]
    NotCrossedHom((usize, usize)),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ActionAxiom {
    UnitActsTrivially,
    Associativity,
    ActsOnUnit,
    Multiplicative,
    CounitCompatible,
    ComultCompatible,
}

impl ActionAxiom {
    pub fn name(self) -> &'static str {
        match self {
            ActionAxiom::UnitActsTrivially => "unit_acts_trivially",
            ActionAxiom::Associativity => "module_associativity",
            ActionAxiom::ActsOnUnit => "acts_on_unit",
            ActionAxiom::Multiplicative => "module_algebra",
            ActionAxiom::CounitCompatible => "counit_compatible",
            ActionAxiom::ComultCompatible => "comult_compatible",
        }
    }
}

impl core::fmt::Display for ActionAxiom {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// A linear action `K⊗H → H`, `tensor[a*dim(H) + x] = e_a ⇀ e_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionData {
    acting: Arc<FinDimHopf>,
    target: Arc<FinDimHopf>,
    tensor: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionReport {
    pub checks: Vec<(ActionAxiom, Option<Vec<usize>>)>,
}

impl ActionReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|(_, w)| w.is_none())
    }

    pub fn first_failure(&self) -> Option<(ActionAxiom, &[usize])> {
        self.checks
            .iter()
            .find_map(|(a, w)| w.as_deref().map(|w| (*a, w)))
    }
}

impl ActionData {
    /// Shape checks only; see `validate_action` for the axioms.
    pub fn new(
        acting: Arc<FinDimHopf>,
        target: Arc<FinDimHopf>,
        tensor: Vec<Vec<Rat>>,
    ) -> Result<Self, ActionError> {
        let (k, n) = (acting.dim(), target.dim());
        if tensor.len() != k * n || tensor.iter().any(|v| v.len() != n) {
            return Err(ActionError::Malformed(format!(
                "need {} vectors of length {n}",
                k * n
            )));
        }
        Ok(ActionData {
            acting,
            target,
            tensor,
        })
    }

    /// `a ⇀ x = ε(a)x`.
    pub fn trivial(acting: &Arc<FinDimHopf>, target: &Arc<FinDimHopf>) -> Self {
        let n = target.dim();
        let tensor = (0..acting.dim() * n)
            .map(|k| {
                let e = acting.counit_basis(k / n);
                let mut v = zero_vec(n);
                v[k % n] = e.clone();
                v
            })
            .collect();
        ActionData {
            acting: acting.clone(),
            target: target.clone(),
            tensor,
        }
    }

    /// `a ⇀ x = a₁ x S(a₂)`.
    pub fn adjoint(h: &Arc<FinDimHopf>) -> Self {
        let n = h.dim();
        let tensor = (0..n * n)
            .map(|k| h.adjoint(&h.basis_vec(k / n), &h.basis_vec(k % n)))
            .collect();
        ActionData {
            acting: h.clone(),
            target: h.clone(),
            tensor,
        }
    }

    /// Linearization of a group action on group algebras `kG`, `kH`.
    pub fn from_group_action(
        act: &GroupAction,
        kg: &Arc<FinDimHopf>,
        kh: &Arc<FinDimHopf>,
    ) -> Result<Self, ActionError> {
        let (m, n) = (act.acting().order(), act.target().order());
        if kg.dim() != m || kh.dim() != n {
            return Err(ActionError::Malformed(
                "group algebras do not match the action".into(),
            ));
        }
        let tensor = (0..m * n)
            .map(|k| {
                let mut v = zero_vec(n);
                v[act.apply(k / n, k % n)] = Rat::one();
                v
            })
            .collect();
        Ok(ActionData {
            acting: kg.clone(),
            target: kh.clone(),
            tensor,
        })
    }

    pub fn acting(&self) -> &Arc<FinDimHopf> {
        &self.acting
    }

    pub fn target(&self) -> &Arc<FinDimHopf> {
        &self.target
    }

    pub fn tensor(&self) -> &[Vec<Rat>] {
        &self.tensor
    }

    pub fn act_basis(&self, a: usize, x: usize) -> &[Rat] {
        &self.tensor[a * self.target.dim() + x]
    }

    pub fn act(&self, a: &[Rat], x: &[Rat]) -> Vec<Rat> {
        let n = self.target.dim();
        let mut out = zero_vec(n);
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cx) in x.iter().enumerate() {
                if cx.is_zero() {
                    continue;
                }
                let c = ca * cx;
                for (o, v) in out.iter_mut().zip(&self.tensor[i * n + j]) {
                    if !v.is_zero() {
                        *o += &c * v;
                    }
                }
            }
        }
        out
    }
}

/// Checks module, module-algebra and optionally module-bialgebra axioms on basis tuples.
pub fn validate_action(a: &ActionData, require_bialgebra: bool) -> ActionReport {
    let (k, h) = (&a.acting, &a.target);
    let (dk, dh) = (k.dim(), h.dim());
    let mut checks = Vec::new();

    let unit = (0..dh)
        .find(|&x| a.act(&k.one(), &h.basis_vec(x)) != h.basis_vec(x))
        .map(|x| vec![x]);
    checks.push((ActionAxiom::UnitActsTrivially, unit));

    let mut assoc = None;
    'outer: for p in 0..dk {
        for q in 0..dk {
            let pq = k.mul(&k.basis_vec(p), &k.basis_vec(q));
            for x in 0..dh {
                let lhs = a.act(&pq, &h.basis_vec(x));
                let rhs = a.act(&k.basis_vec(p), a.act_basis(q, x));
                if lhs != rhs {
                    assoc = Some(vec![p, q, x]);
                    break 'outer;
                }
            }
        }
    }
    checks.push((ActionAxiom::Associativity, assoc));

    let on_unit = (0..dk)
        .find(|&p| {
            a.act(&k.basis_vec(p), &h.one())
                != h.one()
                    .iter()
                    .map(|u| u * k.counit_basis(p))
                    .collect::<Vec<_>>()
        })
        .map(|p| vec![p]);
    checks.push((ActionAxiom::ActsOnUnit, on_unit));

    let mut mult = None;
    'outer2: for p in 0..dk {
        for x in 0..dh {
            for y in 0..dh {
                let lhs = a.act(&k.basis_vec(p), &h.mul(&h.basis_vec(x), &h.basis_vec(y)));
                let mut rhs = h.zero();
                for (i, j, c) in k.comult_basis(p) {
                    let t = h.mul(a.act_basis(*i, x), a.act_basis(*j, y));
                    for (o, v) in rhs.iter_mut().zip(&t) {
                        if !v.is_zero() {
                            *o += c * v;
                        }
                    }
                }
                if lhs != rhs {
                    mult = Some(vec![p, x, y]);
                    break 'outer2;
                }
            }
        }
    }
    checks.push((ActionAxiom::Multiplicative, mult));

    if require_bialgebra {
        let counit = (0..dk)
            .flat_map(|p| (0..dh).map(move |x| (p, x)))
            .find(|&(p, x)| h.counit(a.act_basis(p, x)) != k.counit_basis(p) * h.counit_basis(x))
            .map(|(p, x)| vec![p, x]);
        checks.push((ActionAxiom::CounitCompatible, counit));

        let comult = (0..dk)
            .flat_map(|p| (0..dh).map(move |x| (p, x)))
            .find(|&(p, x)| {
                let lhs = h.comult(a.act_basis(p, x));
                let mut rhs = SparseTensor::zero(2);
                for (i, j, c) in k.comult_basis(p) {
                    for (s, t, d) in h.comult_basis(x) {
                        let l = SparseTensor::from_vector(a.act_basis(*i, *s));
                        let r = SparseTensor::from_vector(a.act_basis(*j, *t));
                        rhs = rhs.add(&l.tensor(&r).scale(&(c * d)));
                    }
                }
                lhs != rhs
            })
            .map(|(p, x)| vec![p, x]);
        checks.push((ActionAxiom::ComultCompatible, comult));
    }
    ActionReport { checks }
}

pub(crate) fn require_valid(a: &ActionData, bialgebra: bool) -> Result<(), ActionError> {
    let rep = validate_action(a, bialgebra);
    match rep.first_failure() {
        None => Ok(()),
        Some((axiom, w)) => Err(ActionError::InvalidAction {
            axiom,
            witness: w.to_vec(),
        }),
    }
}

pub(crate) fn require_cocommutative(h: &FinDimHopf) -> Result<(), ActionError> {
    match h.cocommutativity_witness() {
        None => Ok(()),
        Some(w) => Err(ActionError::NotCocommutative(String::from(h.name()), w)),
    }
}

pub(crate) fn add_scaled(out: &mut [Rat], c: &Rat, v: &[Rat]) {
    for (o, x) in out.iter_mut().zip(v) {
        if !x.is_zero() {
            *o += c * x;
        }
    }
}
