//! Exact rational scalars, dense matrices and sparse tensors.

mod mat;
mod rat;
mod subspace;
mod tensor;

pub use mat::{solve_affine, AffineSolutionSpace, Mat, Rref};
pub use rat::{q, ParseRatError, Rat};
pub use subspace::Subspace;
pub use tensor::SparseTensor;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
}

/// Dot product of equal-length vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

pub fn zero_vec(n: usize) -> alloc::vec::Vec<Rat> {
    alloc::vec![Rat::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> alloc::vec::Vec<Rat> {
    let mut v = zero_vec(n);
    v[i] = Rat::one();
    v
}
