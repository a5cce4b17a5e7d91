//! Degree-truncated free constructions: the tensor Hopf algebra, free Lie
//! algebras in the Lyndon basis and truncated enveloping algebras.

mod checks;
mod extension;
mod freelie;
mod ops;
mod trunc;
mod words;

use alloc::string::String;

pub use checks::{
    algebra_hom_pairs, coalgebra_witness, convolve, crossed_pairs, diff_module_pairs, diffop_pairs,
    extend_diff_smash_trunc, trunc_action_witness, PairCheck,
};
pub use extension::{
    extend_crossed_hom_trunc, mm_check_candidate, mm_instance_check, MmReport, TruncCrossedHom,
    Uniqueness,
};
pub use freelie::{letter_derivation, FreeLie};
pub use ops::{
    ckmm_truncated_instance, coshuffle_comult, diffop_from_hom, graph_vs_enveloping_trunc,
    smash_vs_semidirect_trunc, GraphReport, SemidirectReport, TruncCkmmReport, TruncDiffOp,
};
pub use trunc::{GradedTruncation, TruncAction, TruncMap};
pub use words::{
    bracketing, is_lyndon, letter, lyndon_dims, lyndon_words, standard_factorization, LyndonDims,
};

use crate::lie::LieError;

/// Hard cap on the degree budget.
pub const MAX_BUDGET: usize = 6;
/// Generators allowed at the hard cap.
pub const MAX_GENERATORS: usize = 3;
pub const DEFAULT_BUDGET: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("degree {needed} exceeds the budget {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not a Lie element: {0}")]
    NotLie(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

pub(crate) fn check_bounds(k: usize, n: usize) -> Result<(), FreeError> {
    if k == 0 {
        return Err(FreeError::Malformed(
            "at least one generator is required".into(),
        ));
    }
    if n > MAX_BUDGET {
        return Err(FreeError::BudgetExceeded {
            needed: n,
            budget: MAX_BUDGET,
        });
    }
    if k > MAX_GENERATORS {
        return Err(FreeError::Precondition(alloc::format!(
            "at most {MAX_GENERATORS} generators"
        )));
    }
    Ok(())
}
