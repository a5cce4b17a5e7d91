//! Exact computer algebra for difference operators and crossed homomorphisms
//! on Hopf algebras given by structure constants.
#![no_std]

extern crate alloc;

pub mod actions;
pub mod catalog;
pub mod diffops;
pub mod exactlin;
pub mod free;
pub mod groups;
pub mod hopf;
pub mod lie;
pub mod sample;
pub mod solver;
