use alloc::vec::Vec;

use super::{Mat, Rat};

/// A subspace of `k^n` held as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    dim: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(dim: usize, vectors: &[Vec<Rat>]) -> Self {
        if vectors.is_empty() {
            return Subspace {
                dim,
                rows: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let r = Mat::from_rows(vectors.to_vec())
            .expect("equal lengths")
            .rref();
        let rows = (0..r.pivots.len())
            .map(|i| r.matrix.row(i).to_vec())
            .collect();
        Subspace {
            dim,
            rows,
            pivots: r.pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// Remainder of `v` after eliminating against the echelon basis.
    pub fn residual(&self, v: &[Rat]) -> Vec<Rat> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if c.is_zero() {
                continue;
            }
            for (wi, ri) in w.iter_mut().zip(row) {
                if !ri.is_zero() {
                    *wi -= &c * ri;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.residual(v).iter().all(Rat::is_zero)
    }
}
