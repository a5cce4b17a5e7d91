use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use super::{LinError, Rat};

/// Dense row-major rational matrix. Linear maps use the column convention:
/// column `j` holds the coordinates of the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Solution set of `A·v = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSpace {
    /// `None` means the system is inconsistent.
    pub particular: Option<Vec<Rat>>,
    pub kernel_basis: Vec<Vec<Rat>>,
}

impl AffineSolutionSpace {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.particular.as_ref().map(|_| self.kernel_basis.len())
    }

    /// `particular + Σ coeffs[i]·kernel_basis[i]`.
    pub fn point(&self, coeffs: &[Rat]) -> Option<Vec<Rat>> {
        let mut v = self.particular.clone()?;
        for (c, k) in coeffs.iter().zip(&self.kernel_basis) {
            if c.is_zero() {
                continue;
            }
            for (vi, ki) in v.iter_mut().zip(k) {
                *vi += c * ki;
            }
        }
        Some(v)
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self, LinError> {
        if data.len() != rows * cols {
            return Err(LinError::Shape {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, LinError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinError::Shape {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Builds a matrix from integer rows; intended for literals.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
            .collect();
        Mat::from_rows(rows).expect("ragged integer rows")
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rat>]) -> Result<Self, LinError> {
        let mut m = Mat::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinError::Shape {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[Rat]) {
        assert_eq!(v.len(), self.rows);
        for (i, x) in v.iter().enumerate() {
            self[(i, j)] = x.clone();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, LinError> {
        if self.cols != other.rows {
            return Err(LinError::Shape {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Rat]) -> Result<Vec<Rat>, LinError> {
        if v.len() != self.cols {
            return Err(LinError::Shape {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = vec![Rat::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, LinError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, LinError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rat) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<Mat, LinError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinError::Shape {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss–Jordan elimination. Columns are scanned left to right and the
    /// pivot is the first nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        Rref { matrix: m, pivots }
    }

    /// Row reduces using only the first `pivot_cols` columns as pivot candidates;
    /// the remaining columns ride along. Returns the pivot columns.
    fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip().expect("pivot is nonzero");
            if !inv.is_one() {
                for j in c..self.cols {
                    let v = &self[(r, j)] * &inv;
                    self[(r, j)] = v;
                }
            }
            let pivot_row: Vec<Rat> = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for (off, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        let v = &self[(i, c + off)] - &(&f * pv);
                        self[(i, c + off)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Null-space basis. One vector per free column `f`, in increasing order of `f`;
    /// each has coordinate 1 at `f` and 0 at every other free column.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let Rref { matrix, pivots } = self.rref();
        null_basis(&matrix, &pivots, self.cols)
    }

    /// Exact inverse, or `None` when singular.
    pub fn invert(&self) -> Result<Option<Mat>, LinError> {
        if !self.is_square() {
            return Err(LinError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return Ok(None);
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(Some(inv))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Row-reduced echelon basis of the span of `vectors`, all of length `dim`.
    pub fn span_basis(dim: usize, vectors: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        if vectors.is_empty() {
            return Vec::new();
        }
        let m = Mat::from_rows(vectors.to_vec()).expect("vectors of equal length");
        debug_assert_eq!(m.cols, dim);
        let r = m.rref();
        (0..r.pivots.len())
            .map(|i| r.matrix.row(i).to_vec())
            .collect()
    }
}

fn null_basis(rref: &Mat, pivots: &[usize], cols: usize) -> Vec<Vec<Rat>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::one();
        for (r, &p) in pivots.iter().enumerate() {
            let a = &rref[(r, f)];
            if !a.is_zero() {
                v[p] = -a;
            }
        }
        basis.push(v);
    }
    basis
}

/// Full solution set of `A·v = b`.
pub fn solve_affine(a: &Mat, b: &[Rat]) -> Result<AffineSolutionSpace, LinError> {
    if a.rows != b.len() {
        return Err(LinError::Shape {
            expected: a.rows,
            found: b.len(),
        });
    }
    let n = a.cols;
    let mut aug = Mat::zeros(a.rows, n + 1);
    for i in 0..a.rows {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let pivots = aug.rref_in_place(n);
    let consistent = (pivots.len()..aug.rows).all(|i| aug[(i, n)].is_zero());
    let kernel_basis = null_basis(&aug, &pivots, n);
    let particular = consistent.then(|| {
        let mut v = vec![Rat::zero(); n];
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = aug[(r, n)].clone();
        }
        v
    });
    Ok(AffineSolutionSpace {
        particular,
        kernel_basis,
    })
}

impl Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::q;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn solve_scalar() {
        let s = solve_affine(&Mat::from_int_rows(&[&[2]]), &v(&[1])).unwrap();
        assert_eq!(s.particular, Some(vec![q(1, 2)]));
        assert!(s.kernel_basis.is_empty());
    }

    #[test]
    fn solve_symmetric() {
        let s = solve_affine(&Mat::from_int_rows(&[&[1, -1]]), &v(&[0])).unwrap();
        assert_eq!(s.particular, Some(v(&[0, 0])));
        assert_eq!(s.kernel_basis, vec![v(&[1, 1])]);
    }

    #[test]
    fn solve_inconsistent() {
        let s = solve_affine(&Mat::from_int_rows(&[&[1], &[1]]), &v(&[0, 1])).unwrap();
        assert!(s.particular.is_none());
    }

    #[test]
    fn solve_dimension_mismatch() {
        assert!(solve_affine(&Mat::from_int_rows(&[&[1, 2]]), &v(&[0, 1])).is_err());
    }

    #[test]
    fn kernels() {
        assert!(Mat::identity(3).kernel().is_empty());
        assert_eq!(Mat::zeros(2, 2).kernel(), vec![v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(
            Mat::from_int_rows(&[&[1, 1], &[2, 2]]).kernel(),
            vec![v(&[-1, 1])]
        );
    }

    #[test]
    fn inverses() {
        assert_eq!(Mat::identity(3).invert().unwrap(), Some(Mat::identity(3)));
        let swap = Mat::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.invert().unwrap(), Some(swap.clone()));
        assert_eq!(
            Mat::from_int_rows(&[&[1, 1], &[1, 1]]).invert().unwrap(),
            None
        );
        assert!(Mat::zeros(2, 3).invert().is_err());
    }
}
