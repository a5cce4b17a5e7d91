use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::exactlin::Rat;
use crate::hopf::FinDimHopf;

/// A polynomial over the rationals; monomials are sorted variable lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Vec<usize>, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut p = Poly::zero();
        p.add_term(alloc::vec![i], Rat::one());
        p
    }

    pub fn add_term(&mut self, mut mono: Vec<usize>, c: Rat) {
        if c.is_zero() {
            return;
        }
        mono.sort_unstable();
        let e = self.terms.entry(mono.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add_assign_scaled(&mut self, c: &Rat, other: &Poly) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), c * v);
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                let mut mono = m.clone();
                mono.extend_from_slice(n);
                out.add_term(mono, a * b);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &v in m {
                t = &t * &point[v];
            }
            acc += t;
        }
        acc
    }

    /// Replaces variable `i` by `subs[i]`.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for &v in m {
                t = t.mul(&subs[v]);
            }
            out.add_assign_scaled(&Rat::one(), &t);
        }
        out
    }

    /// Coefficients of the linear part and the constant, when the degree is at most 1.
    pub fn as_affine(&self, nvars: usize) -> Option<(Vec<Rat>, Rat)> {
        if self.degree() > 1 {
            return None;
        }
        let mut lin = alloc::vec![Rat::zero(); nvars];
        for (m, c) in &self.terms {
            if let [v] = m.as_slice() {
                lin[*v] = c.clone();
            }
        }
        Some((lin, self.constant_term()))
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let vars: Vec<&str> = m.iter().map(|&v| names[v].as_str()).collect();
            if vars.is_empty() {
                out.push_str(&alloc::format!("{c}"));
            } else if c.is_one() {
                out.push_str(&vars.join("*"));
            } else {
                out.push_str(&alloc::format!("{c}*{}", vars.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.terms.keys().flatten().max().map_or(0, |m| m + 1))
            .map(|i| alloc::format!("t{i}"))
            .collect();
        f.write_str(&self.format_with(&names))
    }
}

/// An element of `H` whose coordinates are polynomials.
pub type HPoly = Vec<Poly>;

pub fn hpoly_const(v: &[Rat]) -> HPoly {
    v.iter().map(|c| Poly::constant(c.clone())).collect()
}

pub fn hpoly_zero(dim: usize) -> HPoly {
    alloc::vec![Poly::zero(); dim]
}

pub fn hpoly_add_scaled(out: &mut HPoly, c: &Rat, v: &HPoly) {
    for (o, p) in out.iter_mut().zip(v) {
        o.add_assign_scaled(c, p);
    }
}

pub fn hpoly_mul(h: &FinDimHopf, a: &HPoly, b: &HPoly) -> HPoly {
    let mut out = hpoly_zero(h.dim());
    for (i, p) in a.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
        for (j, q) in b.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
            let pq = p.mul(q);
            for (k, c) in h.mult_basis(i, j) {
                out[*k].add_assign_scaled(c, &pq);
            }
        }
    }
    out
}
