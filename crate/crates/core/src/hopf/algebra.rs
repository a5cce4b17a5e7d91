use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::{unit_vec, zero_vec, Mat, Rat, SparseTensor};

use super::HopfError;

/// Sparse vector: (basis index, nonzero coefficient), sorted by index.
pub type SparseVec = Vec<(usize, Rat)>;

/// A finite-dimensional Hopf algebra given by structure constants.
#[derive(Clone, PartialEq, Eq)]
pub struct FinDimHopf {
    name: String,
    basis: Vec<String>,
    /// Product of basis elements `i·j` at index `i*n + j`.
    mult: Vec<SparseVec>,
    unit: Vec<Rat>,
    comult: Vec<Vec<(usize, usize, Rat)>>,
    counit: Vec<Rat>,
    antipode: Mat,
    coradical_group_basis: Option<Vec<usize>>,
    /// Cached Δ⁽²⁾ of each basis element.
    comult2: Vec<Vec<(usize, usize, usize, Rat)>>,
}

/// Raw structure constants, the shape of the algebra file format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfParts {
    pub name: String,
    pub basis: Vec<String>,
    /// `mult[i][j]` is the coordinate vector of `e_i·e_j`.
    pub mult: Vec<Vec<Vec<Rat>>>,
    pub unit: Vec<Rat>,
    pub comult: Vec<Vec<(usize, usize, Rat)>>,
    pub counit: Vec<Rat>,
    pub antipode: Mat,
    pub coradical_group_basis: Option<Vec<usize>>,
}

fn to_sparse(v: &[Rat]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

fn malformed(msg: String) -> HopfError {
    HopfError::Malformed(msg)
}

impl FinDimHopf {
    /// Checks shapes only; the axioms are checked by `validate_hopf`.
    pub fn from_parts(parts: HopfParts) -> Result<Self, HopfError> {
        let n = parts.basis.len();
        if n == 0 {
            return Err(malformed("empty basis".into()));
        }
        if parts.mult.len() != n {
            return Err(malformed(format!(
                "mult has {} rows, expected {n}",
                parts.mult.len()
            )));
        }
        let mut mult = Vec::with_capacity(n * n);
        for (i, row) in parts.mult.iter().enumerate() {
            if row.len() != n {
                return Err(malformed(format!(
                    "mult[{i}] has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != n {
                    return Err(malformed(format!(
                        "mult[{i}][{j}] has length {}, expected {n}",
                        v.len()
                    )));
                }
                mult.push(to_sparse(v));
            }
        }
        Self::from_sparse(
            parts.name,
            parts.basis,
            mult,
            parts.unit,
            parts.comult,
            parts.counit,
            parts.antipode,
            parts.coradical_group_basis,
        )
    }

    /// As `from_parts`, with products already sparse and indexed by `i*n + j`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_sparse(
        name: String,
        basis: Vec<String>,
        mult: Vec<SparseVec>,
        unit: Vec<Rat>,
        comult: Vec<Vec<(usize, usize, Rat)>>,
        counit: Vec<Rat>,
        antipode: Mat,
        coradical_group_basis: Option<Vec<usize>>,
    ) -> Result<Self, HopfError> {
        let n = basis.len();
        if n == 0 {
            return Err(malformed("empty basis".into()));
        }
        if mult.len() != n * n {
            return Err(malformed(format!(
                "mult has {} products, expected {}",
                mult.len(),
                n * n
            )));
        }
        if mult.iter().flatten().any(|(k, _)| *k >= n) {
            return Err(malformed("mult index out of range".into()));
        }
        if unit.len() != n {
            return Err(malformed(format!(
                "unit has length {}, expected {n}",
                unit.len()
            )));
        }
        if counit.len() != n {
            return Err(malformed(format!(
                "counit has length {}, expected {n}",
                counit.len()
            )));
        }
        if comult.len() != n {
            return Err(malformed(format!(
                "comult has {} entries, expected {n}",
                comult.len()
            )));
        }
        if antipode.rows() != n || antipode.cols() != n {
            return Err(malformed(format!(
                "antipode is {}x{}, expected {n}x{n}",
                antipode.rows(),
                antipode.cols()
            )));
        }
        let mut comult_clean = Vec::with_capacity(n);
        for (k, terms) in comult.into_iter().enumerate() {
            let mut t = SparseTensor::zero(2);
            for (i, j, c) in terms {
                if i >= n || j >= n {
                    return Err(malformed(format!(
                        "comult[{k}] index ({i}, {j}) out of range"
                    )));
                }
                t.add_term(vec![i, j], c);
            }
            comult_clean.push(
                t.iter()
                    .map(|(ix, c)| (ix[0], ix[1], c.clone()))
                    .collect::<Vec<_>>(),
            );
        }
        if let Some(cgb) = &coradical_group_basis {
            if cgb.iter().any(|&i| i >= n) {
                return Err(malformed("coradical_group_basis index out of range".into()));
            }
        }
        let mut mult_clean = Vec::with_capacity(n * n);
        for v in mult {
            let mut t = SparseTensor::zero(1);
            for (k, c) in v {
                t.add_term(vec![k], c);
            }
            mult_clean.push(t.iter().map(|(ix, c)| (ix[0], c.clone())).collect());
        }
        let mut h = FinDimHopf {
            name,
            basis,
            mult: mult_clean,
            unit,
            comult: comult_clean,
            counit,
            antipode,
            coradical_group_basis,
            comult2: Vec::new(),
        };
        h.comult2 = (0..n)
            .map(|i| {
                h.sweedler_expand(&unit_vec(n, i), 2)
                    .iter()
                    .map(|(ix, c)| (ix[0], ix[1], ix[2], c.clone()))
                    .collect()
            })
            .collect();
        Ok(h)
    }

    pub fn to_parts(&self) -> HopfParts {
        let n = self.dim();
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = zero_vec(n);
                        for (k, c) in &self.mult[i * n + j] {
                            v[*k] = c.clone();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        HopfParts {
            name: self.name.clone(),
            basis: self.basis.clone(),
            mult,
            unit: self.unit.clone(),
            comult: self.comult.clone(),
            counit: self.counit.clone(),
            antipode: self.antipode.clone(),
            coradical_group_basis: self.coradical_group_basis.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Rat> {
        unit_vec(self.dim(), i)
    }

    pub fn one(&self) -> Vec<Rat> {
        self.unit.clone()
    }

    pub fn zero(&self) -> Vec<Rat> {
        zero_vec(self.dim())
    }

    pub fn coradical_group_basis(&self) -> Option<&[usize]> {
        self.coradical_group_basis.as_deref()
    }

    pub fn antipode_matrix(&self) -> &Mat {
        &self.antipode
    }

    pub fn counit_vector(&self) -> &[Rat] {
        &self.counit
    }

    /// Product of basis elements.
    pub fn mult_basis(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.mult[i * self.dim() + j]
    }

    pub fn comult_basis(&self, i: usize) -> &[(usize, usize, Rat)] {
        &self.comult[i]
    }

    pub fn comult2_basis(&self, i: usize) -> &[(usize, usize, usize, Rat)] {
        &self.comult2[i]
    }

    pub fn counit_basis(&self, i: usize) -> &Rat {
        &self.counit[i]
    }

    pub fn mul(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &self.mult[i * n + j] {
                    out[*k] += &xy * c;
                }
            }
        }
        out
    }

    pub fn mul_many(&self, factors: &[&[Rat]]) -> Vec<Rat> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn counit(&self, a: &[Rat]) -> Rat {
        crate::exactlin::dot(&self.counit, a)
    }

    pub fn antipode(&self, a: &[Rat]) -> Vec<Rat> {
        self.antipode
            .apply(a)
            .expect("antipode shape checked at construction")
    }

    pub fn comult(&self, a: &[Rat]) -> SparseTensor {
        let mut t = SparseTensor::zero(2);
        for (k, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, j, c) in &self.comult[k] {
                t.add_term(vec![*i, *j], x * c);
            }
        }
        t
    }

    /// Δ applied to the basis element `k`, as a rank-2 tensor.
    pub fn comult_tensor(&self, k: usize) -> SparseTensor {
        let mut t = SparseTensor::zero(2);
        for (i, j, c) in &self.comult[k] {
            t.add_term(vec![*i, *j], c.clone());
        }
        t
    }

    /// Iterated comultiplication Δ⁽ⁿ⁾(x), expanding the last leg each time.
    pub fn sweedler_expand(&self, x: &[Rat], n: usize) -> SparseTensor {
        assert!(n >= 1, "sweedler_expand needs n >= 1");
        let mut t = SparseTensor::from_vector(x);
        for r in 1..=n {
            t = t.expand_leg(r - 1, r + 1, |k| self.comult_tensor(k));
        }
        t
    }

    /// Δ⁽ⁿ⁾(x) where step `s` expands leg `legs[s]` (which must be `≤ s`).
    pub fn sweedler_expand_order(&self, x: &[Rat], legs: &[usize]) -> SparseTensor {
        let mut t = SparseTensor::from_vector(x);
        for (s, &leg) in legs.iter().enumerate() {
            assert!(leg <= s, "leg {leg} out of range at step {s}");
            t = t.expand_leg(leg, s + 2, |k| self.comult_tensor(k));
        }
        t
    }

    /// Multiplies out a tensor of rank ≥ 1 into a single element.
    pub fn multiply_tensor(&self, t: &SparseTensor) -> Vec<Rat> {
        let mut out = self.zero();
        for (ix, c) in t.iter() {
            let factors: Vec<Vec<Rat>> = ix.iter().map(|&i| self.basis_vec(i)).collect();
            let refs: Vec<&[Rat]> = factors.iter().map(Vec::as_slice).collect();
            let p = self.mul_many(&refs);
            for (o, v) in out.iter_mut().zip(&p) {
                if !v.is_zero() {
                    *o += c * v;
                }
            }
        }
        out
    }

    /// `u∘ε` applied to a vector.
    pub fn unit_counit(&self, a: &[Rat]) -> Vec<Rat> {
        let e = self.counit(a);
        self.unit.iter().map(|u| u * &e).collect()
    }

    /// Tensor square of two elements.
    pub fn tensor2(&self, a: &[Rat], b: &[Rat]) -> SparseTensor {
        SparseTensor::from_vector(a).tensor(&SparseTensor::from_vector(b))
    }

    /// Is Δ invariant under the tensor swap on every basis element?
    pub fn is_cocommutative(&self) -> bool {
        self.cocommutativity_witness().is_none()
    }

    pub fn cocommutativity_witness(&self) -> Option<usize> {
        (0..self.dim()).find(|&k| {
            let t = self.comult_tensor(k);
            let mut sw = SparseTensor::zero(2);
            for (ix, c) in t.iter() {
                sw.add_term(vec![ix[1], ix[0]], c.clone());
            }
            sw != t
        })
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.mult_basis(i, j) == self.mult_basis(j, i)))
    }

    /// Adjoint action `ad_a(x) = a₁ x S(a₂)`.
    pub fn adjoint(&self, a: &[Rat], x: &[Rat]) -> Vec<Rat> {
        let mut out = self.zero();
        for (ix, c) in self.comult(a).iter() {
            let l = self.basis_vec(ix[0]);
            let r = self.antipode(&self.basis_vec(ix[1]));
            let p = self.mul_many(&[&l, x, &r]);
            for (o, v) in out.iter_mut().zip(&p) {
                if !v.is_zero() {
                    *o += c * v;
                }
            }
        }
        out
    }

    /// Signed combination of basis labels in basis order, e.g. `1/2*z - 1/2*yz`.
    pub fn format(&self, v: &[Rat]) -> String {
        format_combination(&self.basis, v)
    }
}

/// Formats `Σ v_i·label_i`. The label `1` absorbs into the coefficient.
pub fn format_combination(labels: &[String], v: &[Rat]) -> String {
    let mut s = String::new();
    for (label, c) in labels.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if label == "1" {
            s.push_str(&format!("{a}"));
        } else if a.is_one() {
            s.push_str(label);
        } else {
            s.push_str(&format!("{a}*{label}"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl core::fmt::Debug for FinDimHopf {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FinDimHopf")
            .field("name", &self.name)
            .field("basis", &self.basis)
            .finish_non_exhaustive()
    }
}
