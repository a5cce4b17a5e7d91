//! Finite groups by multiplication table, their difference operators,
//! crossed homomorphisms, derived actions and group algebras.

mod action;
mod group;

pub use action::{check_group_crossed_hom, derived_group_action, DerivedGroupAction, GroupAction};
pub use group::{
    check_group_diffop, endo_diffop_bijection, endo_to_group_diffop, enumerate_endos,
    enumerate_endos_bounded, group_algebra, group_diffop_to_endo, group_diffop_witness, lift_map,
    FinGroup, GroupMap, DEFAULT_ENDO_BOUND,
};

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("malformed group table: {0}")]
    Malformed(String),
    #[error("table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
