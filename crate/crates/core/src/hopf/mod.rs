//! Finite-dimensional Hopf algebras by structure constants.

mod algebra;
mod elements;
mod linmap;
mod validate;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

pub use algebra::{format_combination, FinDimHopf, HopfParts, SparseVec};
pub use elements::{grouplikes, is_grouplike, primitives, skew_primitives, Coalgebra, GroupLikes};
pub(crate) use linmap::same_algebra;
pub use linmap::{convolve, LinMap};
pub use validate::{tensor_mul, validate_hopf, Axiom, AxiomCheck, HopfReport};

use crate::exactlin::{LinError, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HopfError {
    #[error("malformed structure constants: {0}")]
    Malformed(String),
    #[error("maps do not share domain and codomain")]
    DomainMismatch,
    #[error("`{0}` is not group-like")]
    NotGrouplike(String),
    #[error("declared coradical is not closed: {0}, {1}")]
    CoradicalNotClosed(String, String),
    #[error(transparent)]
    Lin(#[from] LinError),
}

/// An element of a specific algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub algebra: Arc<FinDimHopf>,
    pub coords: Vec<Rat>,
}

impl Element {
    pub fn new(algebra: Arc<FinDimHopf>, coords: Vec<Rat>) -> Result<Self, HopfError> {
        if coords.len() != algebra.dim() {
            return Err(HopfError::Malformed(alloc::format!(
                "element has {} coordinates, algebra has dimension {}",
                coords.len(),
                algebra.dim()
            )));
        }
        Ok(Element { algebra, coords })
    }

    pub fn basis(algebra: &Arc<FinDimHopf>, i: usize) -> Self {
        Element {
            coords: algebra.basis_vec(i),
            algebra: algebra.clone(),
        }
    }
}

impl core::fmt::Display for Element {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.algebra.format(&self.coords))
    }
}
