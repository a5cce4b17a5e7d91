use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::{Mat, Rat};

use super::FreeError;

/// Letters print as `a, b, c, …`.
pub fn letter(a: usize) -> char {
    char::from(b'a' + a as u8)
}

/// Strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Lyndon words of length exactly `n` over `k` letters in lexicographic order
/// (Duval's generation algorithm).
pub fn lyndon_words(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || n == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    while !w.is_empty() {
        if w.len() == n {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

/// `w = uv` with `v` the longest proper suffix that is a Lyndon word.
pub fn standard_factorization(w: &[usize]) -> Option<(&[usize], &[usize])> {
    (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .map(|i| (&w[..i], &w[i..]))
}

/// Bracketed form, e.g. `[a,[a,b]]`.
pub fn bracketing(w: &[usize]) -> alloc::string::String {
    match standard_factorization(w) {
        None => w.iter().map(|&a| letter(a)).collect(),
        Some((u, v)) => alloc::format!("[{},{}]", bracketing(u), bracketing(v)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LyndonDims {
    /// Entry `n - 1` is the number of Lyndon words of length `n`.
    pub lyndon: Vec<usize>,
    /// Entry `n - 1` is the dimension of the primitives of `TV` in degree `n`.
    pub primitive: Vec<usize>,
}

impl LyndonDims {
    pub fn agree(&self) -> bool {
        self.lyndon == self.primitive
    }
}

/// Lyndon counts per degree together with the primitive dimensions of `TV≤N`
/// computed independently as the kernel of the reduced coshuffle coproduct.
pub fn lyndon_dims(k: usize, n: usize) -> Result<LyndonDims, FreeError> {
    super::check_bounds(k, n)?;
    let lyndon = (1..=n).map(|d| lyndon_words(k, d).len()).collect();
    let primitive = (1..=n).map(|d| primitive_dim(k, d)).collect();
    Ok(LyndonDims { lyndon, primitive })
}

fn words_of_length(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    layer
}

/// `Δ(w) − w⊗1 − 1⊗w` as a map from pairs of nonempty words.
fn reduced_coshuffle(w: &[usize]) -> BTreeMap<(Vec<usize>, Vec<usize>), Rat> {
    let n = w.len();
    let mut acc = BTreeMap::new();
    for mask in 1u32..((1 << n) - 1) {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for (p, &s) in w.iter().enumerate() {
            if mask & (1 << p) != 0 {
                l.push(s);
            } else {
                r.push(s);
            }
        }
        *acc.entry((l, r)).or_insert_with(Rat::zero) += Rat::one();
    }
    acc
}

/// Kernel dimension of the reduced coproduct on words of length `n`, computed
/// block by block over multidegrees (the coproduct preserves them).
fn primitive_dim(k: usize, n: usize) -> usize {
    if n == 1 {
        return k;
    }
    let mut blocks: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    for w in words_of_length(k, n) {
        let mut md = vec![0; k];
        for &a in &w {
            md[a] += 1;
        }
        blocks.entry(md).or_default().push(w);
    }
    let mut total = 0;
    for words in blocks.values() {
        let images: Vec<_> = words.iter().map(|w| reduced_coshuffle(w)).collect();
        let mut cols: BTreeMap<&(Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
        for im in &images {
            for key in im.keys() {
                let next = cols.len();
                cols.entry(key).or_insert(next);
            }
        }
        let rows: Vec<Vec<Rat>> = images
            .iter()
            .map(|im| {
                let mut row = vec![Rat::zero(); cols.len()];
                for (key, c) in im {
                    row[cols[key]] = c.clone();
                }
                row
            })
            .collect();
        let rank = if cols.is_empty() {
            0
        } else {
            Mat::from_rows(rows).expect("rectangular").rank()
        };
        total += words.len() - rank;
    }
    total
}
