use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::{Mat, Rat, SparseTensor};

use super::{FinDimHopf, HopfError};

/// A linear map between Hopf algebras, column `j` the image of basis element `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    domain: Arc<FinDimHopf>,
    codomain: Arc<FinDimHopf>,
    matrix: Mat,
}

pub(crate) fn same_algebra(a: &Arc<FinDimHopf>, b: &Arc<FinDimHopf>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl LinMap {
    pub fn new(
        domain: Arc<FinDimHopf>,
        codomain: Arc<FinDimHopf>,
        matrix: Mat,
    ) -> Result<Self, HopfError> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(HopfError::Malformed(alloc::format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.dim(),
                domain.dim()
            )));
        }
        Ok(LinMap {
            domain,
            codomain,
            matrix,
        })
    }

    /// Map on a single algebra built from the images of basis elements.
    pub fn from_images(h: &Arc<FinDimHopf>, images: &[Vec<Rat>]) -> Result<Self, HopfError> {
        Self::between(h, h, images)
    }

    pub fn between(
        domain: &Arc<FinDimHopf>,
        codomain: &Arc<FinDimHopf>,
        images: &[Vec<Rat>],
    ) -> Result<Self, HopfError> {
        if images.len() != domain.dim() {
            return Err(HopfError::Malformed(alloc::format!(
                "{} images given for a {}-dimensional domain",
                images.len(),
                domain.dim()
            )));
        }
        let m = Mat::from_columns(codomain.dim(), images).map_err(HopfError::Lin)?;
        Self::new(domain.clone(), codomain.clone(), m)
    }

    pub fn identity(h: &Arc<FinDimHopf>) -> Self {
        LinMap {
            domain: h.clone(),
            codomain: h.clone(),
            matrix: Mat::identity(h.dim()),
        }
    }

    /// `u∘ε` from `domain` to `codomain`.
    pub fn unit_counit(domain: &Arc<FinDimHopf>, codomain: &Arc<FinDimHopf>) -> Self {
        let images: Vec<Vec<Rat>> = (0..domain.dim())
            .map(|i| {
                let e = domain.counit_basis(i);
                codomain.one().iter().map(|u| u * e).collect()
            })
            .collect();
        Self::between(domain, codomain, &images).expect("shapes agree by construction")
    }

    pub fn antipode(h: &Arc<FinDimHopf>) -> Self {
        LinMap {
            domain: h.clone(),
            codomain: h.clone(),
            matrix: h.antipode_matrix().clone(),
        }
    }

    pub fn domain(&self) -> &Arc<FinDimHopf> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FinDimHopf> {
        &self.codomain
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn is_endo(&self) -> bool {
        same_algebra(&self.domain, &self.codomain)
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.matrix.apply(v).expect("vector length matches domain")
    }

    pub fn image(&self, i: usize) -> Vec<Rat> {
        self.matrix.col(i)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> Result<LinMap, HopfError> {
        if !same_algebra(&other.codomain, &self.domain) {
            return Err(HopfError::DomainMismatch);
        }
        Ok(LinMap {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.mul(&other.matrix).map_err(HopfError::Lin)?,
        })
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap, HopfError> {
        self.check_parallel(other)?;
        Ok(LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.add(&other.matrix).map_err(HopfError::Lin)?,
        })
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap, HopfError> {
        self.check_parallel(other)?;
        Ok(LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.sub(&other.matrix).map_err(HopfError::Lin)?,
        })
    }

    fn check_parallel(&self, other: &LinMap) -> Result<(), HopfError> {
        if same_algebra(&self.domain, &other.domain)
            && same_algebra(&self.codomain, &other.codomain)
        {
            Ok(())
        } else {
            Err(HopfError::DomainMismatch)
        }
    }

    /// Exact inverse, `None` if singular or not square.
    pub fn inverse(&self) -> Option<LinMap> {
        let inv = self.matrix.invert().ok()??;
        Some(LinMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix: inv,
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.matrix.is_invertible()
    }

    /// Applies `self⊗self` to a rank-2 tensor over the domain.
    pub fn apply_tensor2(&self, t: &SparseTensor) -> SparseTensor {
        let mut out = SparseTensor::zero(2);
        for (ix, c) in t.iter() {
            let a = self.image(ix[0]);
            let b = self.image(ix[1]);
            for (p, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (q, y) in b.iter().enumerate() {
                    if !y.is_zero() {
                        out.add_term(vec![p, q], c * &(x * y));
                    }
                }
            }
        }
        out
    }

    /// First basis element where `Δ∘f = (f⊗f)∘Δ` or `ε∘f = ε` fails.
    pub fn coalgebra_hom_witness(&self) -> Option<usize> {
        (0..self.domain.dim()).find(|&i| {
            let img = self.image(i);
            self.codomain.counit(&img) != *self.domain.counit_basis(i)
                || self.codomain.comult(&img) != self.apply_tensor2(&self.domain.comult_tensor(i))
        })
    }

    pub fn is_coalgebra_hom(&self) -> bool {
        self.coalgebra_hom_witness().is_none()
    }

    /// First witness where `f(1) = 1` (empty tuple) or `f(ab) = f(a)f(b)` fails.
    pub fn algebra_hom_witness(&self) -> Option<Vec<usize>> {
        let (k, h) = (&self.domain, &self.codomain);
        if self.apply(&k.one()) != h.one() {
            return Some(Vec::new());
        }
        let images: Vec<Vec<Rat>> = (0..k.dim()).map(|i| self.image(i)).collect();
        for i in 0..k.dim() {
            for j in 0..k.dim() {
                let lhs = self.apply(&k.mul(&k.basis_vec(i), &k.basis_vec(j)));
                if lhs != h.mul(&images[i], &images[j]) {
                    return Some(vec![i, j]);
                }
            }
        }
        None
    }

    pub fn is_algebra_hom(&self) -> bool {
        self.algebra_hom_witness().is_none()
    }

    pub fn is_hopf_hom(&self) -> bool {
        self.is_algebra_hom() && self.is_coalgebra_hom()
    }

    /// Hopf automorphism: bijective algebra and coalgebra map commuting with `S`.
    pub fn is_hopf_automorphism(&self) -> bool {
        if !self.is_endo() || !self.is_bijective() || !self.is_hopf_hom() {
            return false;
        }
        let s = LinMap::antipode(&self.domain);
        self.compose(&s).ok() == s.compose(self).ok()
    }
}

/// Convolution `(f∗g)(x) = f(x₁)g(x₂)`.
pub fn convolve(f: &LinMap, g: &LinMap) -> Result<LinMap, HopfError> {
    if !same_algebra(&f.domain, &g.domain) || !same_algebra(&f.codomain, &g.codomain) {
        return Err(HopfError::DomainMismatch);
    }
    let (k, h) = (&f.domain, &f.codomain);
    let fi: Vec<Vec<Rat>> = (0..k.dim()).map(|i| f.image(i)).collect();
    let gi: Vec<Vec<Rat>> = (0..k.dim()).map(|i| g.image(i)).collect();
    let images: Vec<Vec<Rat>> = (0..k.dim())
        .map(|x| {
            let mut out = h.zero();
            for (a, b, c) in k.comult_basis(x) {
                let p = h.mul(&fi[*a], &gi[*b]);
                for (o, v) in out.iter_mut().zip(&p) {
                    if !v.is_zero() {
                        *o += c * v;
                    }
                }
            }
            out
        })
        .collect();
    LinMap::between(k, h, &images)
}
