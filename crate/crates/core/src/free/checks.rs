use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::exactlin::Rat;

use super::trunc::{GradedTruncation, TruncAction, TruncMap};
use super::FreeError;

/// Outcome of an identity checked on the basis pairs that fit the budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub checked: usize,
    /// Pairs left out because their degrees exceed the budget.
    pub skipped: usize,
    pub witness: Option<(usize, usize)>,
}

impl PairCheck {
    pub fn passes(&self) -> bool {
        self.witness.is_none()
    }
}

fn add_scaled(out: &mut [Rat], c: &Rat, v: &[Rat]) {
    for (o, x) in out.iter_mut().zip(v) {
        if !x.is_zero() {
            *o += c * x;
        }
    }
}

fn run_pairs<F>(t: &GradedTruncation, mut holds: F) -> Result<PairCheck, FreeError>
where
    F: FnMut(usize, usize) -> Result<bool, FreeError>,
{
    let pairs: Vec<(usize, usize)> = t.in_budget_pairs().collect();
    let mut check = PairCheck {
        checked: 0,
        skipped: t.out_of_budget_pairs(),
        witness: None,
    };
    for (x, y) in pairs {
        check.checked += 1;
        if !holds(x, y)? {
            check.witness = Some((x, y));
            break;
        }
    }
    Ok(check)
}

fn product_vec(t: &GradedTruncation, x: usize, y: usize) -> Vec<Rat> {
    let mut v = t.zero();
    for (k, c) in t.mul_basis(x, y).expect("pair in budget") {
        v[*k] = c.clone();
    }
    v
}

/// First basis element where `f` fails to commute with `Δ` or `ε`. On a graded
/// codomain, components of tensor degree above the budget are not compared:
/// the truncated values of `f` cannot determine them.
pub fn coalgebra_witness(f: &TruncMap) -> Option<usize> {
    let (dom, cod) = (f.domain(), f.codomain());
    let visible =
        |p: usize, q: usize| !cod.is_graded() || cod.degree(p) + cod.degree(q) <= cod.budget();
    (0..dom.dim()).find(|&i| {
        let img = f.image(i);
        if cod.counit(&img) != dom.counit_vector()[i] {
            return true;
        }
        let mut lhs = cod.comult(&img);
        lhs.retain(|(p, q), _| visible(*p, *q));
        let mut rhs: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        for (a, b, c) in dom.comult_basis(i) {
            let (fa, fb) = (f.image(*a), f.image(*b));
            for (p, x) in fa.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (q, y) in fb.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    *rhs.entry((p, q)).or_insert_with(Rat::zero) += c * &(x * y);
                }
            }
        }
        rhs.retain(|(p, q), c| !c.is_zero() && visible(*p, *q));
        lhs != rhs
    })
}

/// `f(xy) = f(x)f(y)` on in-budget pairs, after `f(1) = 1`.
pub fn algebra_hom_pairs(f: &TruncMap) -> Result<PairCheck, FreeError> {
    let (dom, cod) = (f.domain(), f.codomain());
    if f.apply(&dom.one()) != cod.one() {
        return Ok(PairCheck {
            checked: 0,
            skipped: 0,
            witness: Some((dom.unit_index(), dom.unit_index())),
        });
    }
    run_pairs(dom, |x, y| {
        Ok(f.apply(&product_vec(dom, x, y)) == cod.mul(&f.image(x), &f.image(y))?)
    })
}

/// `(f∗g)(x) = f(x₁)g(x₂)`.
pub fn convolve(f: &TruncMap, g: &TruncMap) -> Result<TruncMap, FreeError> {
    if !Arc::ptr_eq(f.domain(), g.domain()) && f.domain() != g.domain() {
        return Err(FreeError::Malformed(
            "convolution of maps with different domains".into(),
        ));
    }
    let (dom, cod) = (f.domain(), f.codomain());
    let images: Vec<Vec<Rat>> = (0..dom.dim())
        .map(|i| {
            let mut v = cod.zero();
            for (a, b, c) in dom.comult_basis(i) {
                add_scaled(&mut v, c, &cod.mul(&f.image(*a), &g.image(*b))?);
            }
            Ok(v)
        })
        .collect::<Result<_, FreeError>>()?;
    TruncMap::from_images(dom, cod, &images)
}

/// `D(xy) = D(x₁)x₂D(y)S(x₃)` on in-budget pairs.
pub fn diffop_pairs(d: &TruncMap) -> Result<PairCheck, FreeError> {
    let t = d.domain();
    let images: Vec<Vec<Rat>> = (0..t.dim()).map(|i| d.image(i)).collect();
    let antipodes: Vec<Vec<Rat>> = (0..t.dim()).map(|i| t.antipode(&t.basis_vec(i))).collect();
    let mut left_cache: BTreeMap<usize, Vec<(usize, Vec<Rat>)>> = BTreeMap::new();
    run_pairs(t, |x, y| {
        if !left_cache.contains_key(&x) {
            // Σ D(x₁)x₂ grouped by x₃
            let mut grouped: BTreeMap<usize, Vec<Rat>> = BTreeMap::new();
            for (i, j, k, c) in t.comult2_basis(x) {
                let v = t.mul(&images[i], &t.basis_vec(j))?;
                add_scaled(grouped.entry(k).or_insert_with(|| t.zero()), &c, &v);
            }
            left_cache.insert(x, grouped.into_iter().collect());
        }
        let lhs = d.apply(&product_vec(t, x, y));
        let mut rhs = t.zero();
        for (k, l) in &left_cache[&x] {
            let v = t.mul(&t.mul(l, &images[y])?, &antipodes[*k])?;
            add_scaled(&mut rhs, &Rat::one(), &v);
        }
        Ok(lhs == rhs)
    })
}

/// `π(ab) = π(a₁)(a₂⇀π(b))` on in-budget pairs of the acting truncation.
pub fn crossed_pairs(pi: &TruncMap, action: &TruncAction) -> Result<PairCheck, FreeError> {
    let (k, h) = (action.acting(), action.target());
    if pi.domain() != k || pi.codomain() != h {
        return Err(FreeError::Malformed(
            "crossed homomorphism does not match the action".into(),
        ));
    }
    let images: Vec<Vec<Rat>> = (0..k.dim()).map(|i| pi.image(i)).collect();
    run_pairs(k, |a, b| {
        let lhs = pi.apply(&product_vec(k, a, b));
        let mut rhs = h.zero();
        for (i, j, c) in k.comult_basis(a) {
            let acted = action.act(&k.basis_vec(*j), &images[b])?;
            add_scaled(&mut rhs, c, &h.mul(&images[*i], &acted)?);
        }
        Ok(lhs == rhs)
    })
}

/// Module-bialgebra axioms on in-budget tuples. The witness names the failing
/// axiom and basis indices.
pub fn trunc_action_witness(
    action: &TruncAction,
) -> Result<Option<(&'static str, Vec<usize>)>, FreeError> {
    let (k, h) = (action.acting(), action.target());
    let n = h.budget().max(k.budget());
    let fits = |a: usize, x: usize| k.degree(a) + h.degree(x) <= n;
    for x in 0..h.dim() {
        if action.act(&k.one(), &h.basis_vec(x))? != h.basis_vec(x) {
            return Ok(Some(("unit acts trivially", alloc::vec![x])));
        }
    }
    for a in 0..k.dim() {
        let eps = &k.counit_vector()[a];
        let want: Vec<Rat> = h.one().iter().map(|c| c * eps).collect();
        if action.act(&k.basis_vec(a), &h.one())? != want {
            return Ok(Some(("acts on unit", alloc::vec![a])));
        }
    }
    for (a, b) in k.in_budget_pairs().collect::<Vec<_>>() {
        let ab = product_vec(k, a, b);
        for x in 0..h.dim() {
            if k.degree(a) + k.degree(b) + h.degree(x) > n {
                continue;
            }
            let xv = h.basis_vec(x);
            let inner = action.act(&k.basis_vec(b), &xv)?;
            if action.act(&ab, &xv)? != action.act(&k.basis_vec(a), &inner)? {
                return Ok(Some(("associativity", alloc::vec![a, b, x])));
            }
        }
    }
    for a in 0..k.dim() {
        for (x, y) in h.in_budget_pairs().collect::<Vec<_>>() {
            if !fits(a, x) || k.degree(a) + h.degree(x) + h.degree(y) > n {
                continue;
            }
            let lhs = action.act(&k.basis_vec(a), &product_vec(h, x, y))?;
            let mut rhs = h.zero();
            for (a1, a2, c) in k.comult_basis(a) {
                let l = action.act(&k.basis_vec(*a1), &h.basis_vec(x))?;
                let r = action.act(&k.basis_vec(*a2), &h.basis_vec(y))?;
                add_scaled(&mut rhs, c, &h.mul(&l, &r)?);
            }
            if lhs != rhs {
                return Ok(Some(("multiplicative", alloc::vec![a, x, y])));
            }
        }
        for x in 0..h.dim() {
            if !fits(a, x) {
                continue;
            }
            let v = action.act(&k.basis_vec(a), &h.basis_vec(x))?;
            if h.counit(&v) != &k.counit_vector()[a] * &h.counit_vector()[x] {
                return Ok(Some(("counit compatible", alloc::vec![a, x])));
            }
            let lhs = h.comult(&v);
            let mut rhs: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
            for (a1, a2, c) in k.comult_basis(a) {
                for (x1, x2, d) in h.comult_basis(x) {
                    let l = action.act(&k.basis_vec(*a1), &h.basis_vec(*x1))?;
                    let r = action.act(&k.basis_vec(*a2), &h.basis_vec(*x2))?;
                    for (p, u) in l.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
                        for (q, w) in r.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
                            *rhs.entry((p, q)).or_insert_with(Rat::zero) += &(c * d) * &(u * w);
                        }
                    }
                }
            }
            rhs.retain(|_, c| !c.is_zero());
            if lhs != rhs {
                return Ok(Some(("comultiplication compatible", alloc::vec![a, x])));
            }
        }
    }
    Ok(None)
}

/// `D_H(a₁⇀x₁)(a₂⇀x₂) = D_K(a₁)a₂ ⇀ D_H(x₁)x₂` for `deg a + deg x ≤ N`.
pub fn diff_module_pairs(
    dh: &TruncMap,
    dk: &TruncMap,
    action: &TruncAction,
) -> Result<PairCheck, FreeError> {
    let (k, h) = (action.acting(), action.target());
    let n = h.budget().max(k.budget());
    let mut check = PairCheck {
        checked: 0,
        skipped: 0,
        witness: None,
    };
    for a in 0..k.dim() {
        let mut ka = k.zero();
        for (i, j, c) in k.comult_basis(a) {
            add_scaled(&mut ka, c, &k.mul(&dk.image(*i), &k.basis_vec(*j))?);
        }
        for x in 0..h.dim() {
            if k.degree(a) + h.degree(x) > n {
                check.skipped += 1;
                continue;
            }
            check.checked += 1;
            let mut lhs = h.zero();
            let mut hx = h.zero();
            for (x1, x2, c) in h.comult_basis(x) {
                add_scaled(&mut hx, c, &h.mul(&dh.image(*x1), &h.basis_vec(*x2))?);
                for (a1, a2, d) in k.comult_basis(a) {
                    let l = dh.apply(&action.act(&k.basis_vec(*a1), &h.basis_vec(*x1))?);
                    let r = action.act(&k.basis_vec(*a2), &h.basis_vec(*x2))?;
                    add_scaled(&mut lhs, &(c * d), &h.mul(&l, &r)?);
                }
            }
            if lhs != action.act(&ka, &hx)? {
                check.witness = Some((a, x));
                return Ok(check);
            }
        }
    }
    Ok(check)
}

/// `D(x#a) = D_H(x₁)x₂(D_K(a₁)⇀S_H(x₃)) # D_K(a₂)` on the truncated smash product.
pub fn extend_diff_smash_trunc(
    dh: &TruncMap,
    dk: &TruncMap,
    action: &TruncAction,
    smash: &Arc<GradedTruncation>,
) -> Result<TruncMap, FreeError> {
    let (k, h) = (action.acting(), action.target());
    let images: Vec<Vec<Rat>> = (0..smash.dim())
        .map(|p| {
            let (x, a) = (smash.key(p)[0], smash.key(p)[1]);
            let mut col = smash.zero();
            for (i, j, l, c) in h.comult2_basis(x) {
                let front = h.mul(&dh.image(i), &h.basis_vec(j))?;
                let sx = h.antipode(&h.basis_vec(l));
                for (a1, a2, d) in k.comult_basis(a) {
                    let left = h.mul(&front, &action.act(&dk.image(*a1), &sx)?)?;
                    let right = dk.image(*a2);
                    for (s, u) in left.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
                        for (t, w) in right.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
                            let q =
                                smash
                                    .index_of_key(&[s, t])
                                    .ok_or(FreeError::BudgetExceeded {
                                        needed: h.degree(s) + k.degree(t),
                                        budget: smash.budget(),
                                    })?;
                            col[q] += &(&c * d) * &(u * w);
                        }
                    }
                }
            }
            Ok(col)
        })
        .collect::<Result<_, FreeError>>()?;
    TruncMap::from_images(smash, smash, &images)
}
