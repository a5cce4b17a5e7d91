use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::exactlin::{zero_vec, Mat, Rat};
use crate::lie::FinLie;

use super::trunc::{GradedTruncation, TruncMap};
use super::words::{bracketing, lyndon_words, standard_factorization};
use super::FreeError;

type Poly = BTreeMap<Vec<usize>, Rat>;

fn poly_mul(p: &Poly, q: &Poly, n: usize) -> Poly {
    let mut out = Poly::new();
    for (u, a) in p {
        for (v, b) in q {
            if u.len() + v.len() > n {
                continue;
            }
            let mut w = u.clone();
            w.extend_from_slice(v);
            *out.entry(w).or_insert_with(Rat::zero) += a * b;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_commutator(p: &Poly, q: &Poly, n: usize) -> Poly {
    let mut out = poly_mul(p, q, n);
    for (w, c) in poly_mul(q, p, n) {
        *out.entry(w).or_insert_with(Rat::zero) -= c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The free Lie algebra on `k` letters modulo brackets of degree `> N`, on the
/// Lyndon basis (ordered by degree, then lexicographically), together with the
/// bracketed Lyndon polynomials in `TV`.
#[derive(Clone, Debug)]
pub struct FreeLie {
    generators: usize,
    budget: usize,
    words: Vec<Vec<usize>>,
    polys: Vec<Poly>,
    lie: Arc<FinLie>,
}

impl FreeLie {
    pub fn new(k: usize, n: usize) -> Result<Self, FreeError> {
        super::check_bounds(k, n)?;
        let words: Vec<Vec<usize>> = (1..=n).flat_map(|d| lyndon_words(k, d)).collect();
        let mut polys: Vec<Poly> = Vec::with_capacity(words.len());
        for w in &words {
            let p = match standard_factorization(w) {
                None => Poly::from([(w.clone(), Rat::one())]),
                Some((u, v)) => {
                    let iu = words
                        .iter()
                        .position(|x| x == u)
                        .expect("left factor is Lyndon");
                    let iv = words
                        .iter()
                        .position(|x| x == v)
                        .expect("right factor is Lyndon");
                    poly_commutator(&polys[iu], &polys[iv], n)
                }
            };
            polys.push(p);
        }
        let dim = words.len();
        let mut upper = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let c = poly_commutator(&polys[i], &polys[j], n);
                let v = decompose(&words, &polys, &c)?;
                if v.iter().any(|x| !x.is_zero()) {
                    upper.push((i, j, v));
                }
            }
        }
        let labels = words.iter().map(|w| bracketing(w)).collect();
        let lie = FinLie::from_upper(format!("L{k}<={n}"), labels, &upper)?;
        Ok(FreeLie {
            generators: k,
            budget: n,
            words,
            polys,
            lie: Arc::new(lie),
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn lie(&self) -> &Arc<FinLie> {
        &self.lie
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    /// Degree of each basis element.
    pub fn weights(&self) -> Vec<usize> {
        self.words.iter().map(Vec::len).collect()
    }

    /// The bracketed Lyndon polynomial of basis element `i` as an element of `tv`.
    pub fn poly_in(&self, tv: &GradedTruncation, i: usize) -> Vec<Rat> {
        let mut v = tv.zero();
        for (w, c) in &self.polys[i] {
            if let Some(k) = tv.index_of_key(w) {
                v[k] = c.clone();
            }
        }
        v
    }

    /// The enveloping truncation `U(L)≤N`.
    pub fn enveloping(&self) -> Result<GradedTruncation, FreeError> {
        GradedTruncation::enveloping(&self.lie, &self.weights(), self.budget)
    }

    /// Expresses an element of `Lie(V)≤N ⊂ TV≤N` in the Lyndon basis.
    pub fn coordinates(&self, tv: &GradedTruncation, v: &[Rat]) -> Result<Vec<Rat>, FreeError> {
        let p: Poly = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (tv.key(i).to_vec(), c.clone()))
            .collect();
        decompose(&self.words, &self.polys, &p)
    }

    /// The Milnor–Moore identification `U(L)≤N → TV≤N` sending a PBW monomial
    /// to the product of its Lyndon polynomials.
    pub fn pbw_to_tensor(
        &self,
        u: &Arc<GradedTruncation>,
        tv: &Arc<GradedTruncation>,
    ) -> Result<TruncMap, FreeError> {
        let images: Vec<Vec<Rat>> = (0..u.dim())
            .map(|m| {
                let factors: Vec<Vec<Rat>> =
                    u.key(m).iter().map(|&i| self.poly_in(tv, i)).collect();
                let refs: Vec<&[Rat]> = factors.iter().map(Vec::as_slice).collect();
                tv.mul_many(&refs)
            })
            .collect::<Result<_, _>>()?;
        TruncMap::from_images(u, tv, &images)
    }
}

/// Peels off the lexicographically smallest word, which must be Lyndon since
/// each Lyndon polynomial is its word plus larger words of the same length.
fn decompose(words: &[Vec<usize>], polys: &[Poly], p: &Poly) -> Result<Vec<Rat>, FreeError> {
    let mut rest = p.clone();
    let mut out = zero_vec(words.len());
    while let Some((w, c)) = rest
        .iter()
        .min_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)))
    {
        let (w, c) = (w.clone(), c.clone());
        let i = words
            .iter()
            .position(|x| *x == w)
            .ok_or_else(|| FreeError::NotLie(format!("leading word {w:?} is not Lyndon")))?;
        out[i] += &c;
        for (u, d) in &polys[i] {
            *rest.entry(u.clone()).or_insert_with(Rat::zero) -= &c * d;
        }
        rest.retain(|_, c| !c.is_zero());
    }
    Ok(out)
}

/// The derivation of `TV≤N` sending letter `a` to `images[a]`, truncated at the budget.
pub fn letter_derivation(tv: &GradedTruncation, images: &[Vec<Rat>]) -> Result<Mat, FreeError> {
    let dim = tv.dim();
    let letters: Vec<Vec<Rat>> = (0..images.len())
        .map(|a| {
            tv.index_of_key(&[a])
                .map(|i| tv.basis_vec(i))
                .ok_or_else(|| FreeError::Malformed(format!("no letter {a} in `{}`", tv.name())))
        })
        .collect::<Result<_, _>>()?;
    let mut m = Mat::zeros(dim, dim);
    for i in 0..dim {
        let w = tv.key(i).to_vec();
        if w.iter().any(|&a| a >= images.len()) {
            return Err(FreeError::Malformed(
                "derivation images do not cover every letter".into(),
            ));
        }
        let mut col = tv.zero();
        for p in 0..w.len() {
            let factors: Vec<&[Rat]> = w
                .iter()
                .enumerate()
                .map(|(q, &a)| {
                    if q == p {
                        images[a].as_slice()
                    } else {
                        letters[a].as_slice()
                    }
                })
                .collect();
            let t = tv.mul_many(&factors)?;
            for (r, c) in t.iter().enumerate() {
                if !c.is_zero() {
                    col[r] += c;
                }
            }
        }
        m.set_col(i, &col);
    }
    Ok(m)
}
