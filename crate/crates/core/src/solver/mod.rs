//! Branch-and-solve classification of difference operators on small pointed
//! Hopf algebras.

mod classify;
mod eliminate;
mod plan;
mod poly;
mod quadratic;
mod verify;

use alloc::string::String;

pub use classify::{
    classify_diffops, BranchLog, BranchStatus, Certificate, ClassificationResult, Route,
};
pub use eliminate::{eliminate, Elimination};
pub use plan::{dual_algebra_checks, Ansatz, Role, ScheduledGenerator, SearchPlan};
pub use poly::{HPoly, Poly};
pub use quadratic::{
    character_transform, characters, inverse_character_transform, rational_roots,
    solve_quadratic_in_group_algebra, QuadraticSolutions,
};
pub use verify::{verify_against_published, EntryDiff, PublishedDiff};

use crate::groups::GroupError;
use crate::hopf::HopfError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("invalid search plan: {0}")]
    Plan(String),
    #[error("`{0}` is not an elementary abelian 2-group")]
    NotExponentTwo(String),
    #[error("polynomial of degree {0} is beyond the quadratic solver")]
    Degree(usize),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("candidate failed re-verification: {0}")]
    Verification(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
