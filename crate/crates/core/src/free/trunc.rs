use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::{zero_vec, Mat, Rat};
use crate::hopf::{format_combination, Coalgebra, FinDimHopf, SparseVec};
use crate::lie::{FinLie, LieAction};

use super::words::letter;
use super::FreeError;

pub type Triples = Vec<(usize, usize, Rat)>;

/// A filtered Hopf algebra cut off at a degree budget `N`. Basis products are
/// stored only when the degrees add up to at most `N`; comultiplication, counit
/// and antipode are total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedTruncation {
    name: String,
    budget: usize,
    labels: Vec<String>,
    keys: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
    degrees: Vec<usize>,
    mult: BTreeMap<(usize, usize), SparseVec>,
    unit: usize,
    comult: Vec<Triples>,
    counit: Vec<Rat>,
    antipode: Mat,
    graded: bool,
}

fn push_term(acc: &mut BTreeMap<usize, Rat>, k: usize, c: Rat) {
    let e = acc.entry(k).or_insert_with(Rat::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

fn triples(acc: BTreeMap<(usize, usize), Rat>) -> Triples {
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((i, j), c)| (i, j, c))
        .collect()
}

/// All ways of splitting a sequence into a subsequence and its complement.
fn splittings(seq: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = seq.len();
    (0u32..(1 << n))
        .map(|mask| {
            let mut l = Vec::new();
            let mut r = Vec::new();
            for (p, &s) in seq.iter().enumerate() {
                if mask & (1 << p) != 0 {
                    l.push(s);
                } else {
                    r.push(s);
                }
            }
            (l, r)
        })
        .collect()
}

impl GradedTruncation {
    /// `TV≤N` on `k` letters: words ordered by length then lexicographically,
    /// concatenation product, coshuffle coproduct, `S(w) = (−1)^|w| reverse(w)`.
    pub fn tensor(k: usize, n: usize) -> Result<Self, FreeError> {
        super::check_bounds(k, n)?;
        let mut keys: Vec<Vec<usize>> = vec![Vec::new()];
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
            keys.extend(layer.iter().cloned());
        }
        let index: BTreeMap<Vec<usize>, usize> = keys
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let labels = keys.iter().map(|w| word_label(w)).collect();
        let degrees: Vec<usize> = keys.iter().map(Vec::len).collect();
        let mut mult = BTreeMap::new();
        for (i, u) in keys.iter().enumerate() {
            for (j, v) in keys.iter().enumerate() {
                if u.len() + v.len() <= n {
                    let mut w = u.clone();
                    w.extend_from_slice(v);
                    mult.insert((i, j), vec![(index[&w], Rat::one())]);
                }
            }
        }
        let comult = keys
            .iter()
            .map(|w| {
                let mut acc = BTreeMap::new();
                for (l, r) in splittings(w) {
                    *acc.entry((index[&l], index[&r])).or_insert_with(Rat::zero) += Rat::one();
                }
                triples(acc)
            })
            .collect();
        let dim = keys.len();
        let mut antipode = Mat::zeros(dim, dim);
        for (i, w) in keys.iter().enumerate() {
            let rev: Vec<usize> = w.iter().rev().copied().collect();
            antipode[(index[&rev], i)] = if w.len() % 2 == 0 {
                Rat::one()
            } else {
                -Rat::one()
            };
        }
        let mut counit = zero_vec(dim);
        counit[0] = Rat::one();
        Ok(GradedTruncation {
            name: format!("TV{k}<={n}"),
            budget: n,
            labels,
            keys,
            index,
            degrees,
            mult,
            unit: 0,
            comult,
            counit,
            antipode,
            graded: true,
        })
    }

    /// `U(g)≤N` on the PBW basis of non-decreasing index sequences, filtered by
    /// `weights`. The weights must filter the bracket; the truncation is graded
    /// when every bracket is homogeneous.
    pub fn enveloping(lie: &FinLie, weights: &[usize], n: usize) -> Result<Self, FreeError> {
        let d = lie.dim();
        if weights.len() != d || weights.iter().any(|&w| w == 0) {
            return Err(FreeError::Malformed(format!("need {d} positive weights")));
        }
        if n > super::MAX_BUDGET {
            return Err(FreeError::BudgetExceeded {
                needed: n,
                budget: super::MAX_BUDGET,
            });
        }
        let mut graded = true;
        for i in 0..d {
            for j in 0..d {
                for (k, c) in lie.bracket_basis(i, j).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if weights[k] > weights[i] + weights[j] {
                        return Err(FreeError::Malformed(format!(
                            "weights do not filter [{}, {}]",
                            lie.labels()[i],
                            lie.labels()[j]
                        )));
                    }
                    if weights[k] != weights[i] + weights[j] {
                        graded = false;
                    }
                }
            }
        }
        let weight = |s: &[usize]| s.iter().map(|&i| weights[i]).sum::<usize>();
        // non-decreasing sequences of total weight ≤ n
        let mut keys: Vec<Vec<usize>> = vec![Vec::new()];
        let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                let start = s.last().copied().unwrap_or(0);
                for i in start..d {
                    let mut t = s.clone();
                    t.push(i);
                    if weight(&t) <= n {
                        next.push(t);
                    }
                }
            }
            keys.extend(next.iter().cloned());
            frontier = next;
        }
        keys.sort_by(|a, b| weight(a).cmp(&weight(b)).then_with(|| a.cmp(b)));
        let index: BTreeMap<Vec<usize>, usize> = keys
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let labels = keys
            .iter()
            .map(|s| {
                if s.is_empty() {
                    String::from("1")
                } else {
                    s.iter()
                        .map(|&i| lie.labels()[i].as_str())
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        let degrees: Vec<usize> = keys.iter().map(|s| weight(s)).collect();
        let mut pbw = Straightener {
            lie,
            memo: BTreeMap::new(),
        };
        let to_vec = |nf: &BTreeMap<Vec<usize>, Rat>| -> SparseVec {
            nf.iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(s, c)| (index[s], c.clone()))
                .collect::<BTreeMap<_, _>>()
                .into_iter()
                .collect()
        };
        let mut mult = BTreeMap::new();
        for (i, u) in keys.iter().enumerate() {
            for (j, v) in keys.iter().enumerate() {
                if degrees[i] + degrees[j] <= n {
                    let mut w = u.clone();
                    w.extend_from_slice(v);
                    let nf = pbw.normal_form(&w);
                    mult.insert((i, j), to_vec(&nf));
                }
            }
        }
        let comult = keys
            .iter()
            .map(|s| {
                let mut acc = BTreeMap::new();
                for (l, r) in splittings(s) {
                    *acc.entry((index[&l], index[&r])).or_insert_with(Rat::zero) += Rat::one();
                }
                triples(acc)
            })
            .collect();
        let dim = keys.len();
        let mut antipode = Mat::zeros(dim, dim);
        for (i, s) in keys.iter().enumerate() {
            let rev: Vec<usize> = s.iter().rev().copied().collect();
            let sign = if s.len() % 2 == 0 {
                Rat::one()
            } else {
                -Rat::one()
            };
            for (k, c) in to_vec(&pbw.normal_form(&rev)) {
                antipode[(k, i)] = &sign * &c;
            }
        }
        let mut counit = zero_vec(dim);
        counit[0] = Rat::one();
        Ok(GradedTruncation {
            name: format!("U({})<={n}", lie.name()),
            budget: n,
            labels,
            keys,
            index,
            degrees,
            mult,
            unit: 0,
            comult,
            counit,
            antipode,
            graded,
        })
    }

    /// A finite-dimensional Hopf algebra placed in degree 0.
    pub fn from_hopf(h: &FinDimHopf) -> Result<Self, FreeError> {
        let n = h.dim();
        let unit = (0..n).find(|&i| h.basis_vec(i) == h.one()).ok_or_else(|| {
            FreeError::Malformed(format!("the unit of `{}` is not a basis element", h.name()))
        })?;
        let mut mult = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                mult.insert((i, j), h.mult_basis(i, j).to_vec());
            }
        }
        let keys: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        Ok(GradedTruncation {
            name: h.name().to_string(),
            budget: 0,
            labels: h.basis().to_vec(),
            index: keys
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, w)| (w, i))
                .collect(),
            keys,
            degrees: vec![0; n],
            mult,
            unit,
            comult: (0..n).map(|i| h.comult_basis(i).to_vec()).collect(),
            counit: h.counit_vector().to_vec(),
            antipode: h.antipode_matrix().clone(),
            graded: true,
        })
    }

    /// The truncated smash product `H#K` for a cocommutative acting truncation,
    /// on pairs `x#a` with `deg x + deg a ≤ N`.
    pub fn smash(action: &TruncAction) -> Result<Self, FreeError> {
        let (k, h) = (&action.acting, &action.target);
        if let Some(i) = (0..k.dim()).find(|&i| !k.comult_is_symmetric(i)) {
            return Err(FreeError::Precondition(format!(
                "`{}` is not cocommutative at {}",
                k.name,
                k.label(i)
            )));
        }
        let n = h.budget.max(k.budget);
        let mut keys = Vec::new();
        for x in 0..h.dim() {
            for a in 0..k.dim() {
                if h.degrees[x] + k.degrees[a] <= n {
                    keys.push(vec![x, a]);
                }
            }
        }
        let deg = |key: &[usize]| h.degrees[key[0]] + k.degrees[key[1]];
        keys.sort_by(|p, q| deg(p).cmp(&deg(q)).then_with(|| p.cmp(q)));
        let index: BTreeMap<Vec<usize>, usize> = keys
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let degrees: Vec<usize> = keys.iter().map(|p| deg(p)).collect();
        let labels = keys
            .iter()
            .map(|p| format!("{}#{}", h.label(p[0]), k.label(p[1])))
            .collect();
        let lookup = |x: usize, a: usize| -> Result<usize, FreeError> {
            index
                .get(&vec![x, a])
                .copied()
                .ok_or(FreeError::BudgetExceeded {
                    needed: h.degrees[x] + k.degrees[a],
                    budget: n,
                })
        };
        let mut mult = BTreeMap::new();
        for (p, kp) in keys.iter().enumerate() {
            for (q, kq) in keys.iter().enumerate() {
                if degrees[p] + degrees[q] > n {
                    continue;
                }
                let (x, a) = (kp[0], kp[1]);
                let (y, b) = (kq[0], kq[1]);
                let mut acc = BTreeMap::new();
                for (a1, a2, c) in k.comult_basis(a) {
                    let acted = action.act(&k.basis_vec(*a1), &h.basis_vec(y))?;
                    let left = h.mul(&h.basis_vec(x), &acted)?;
                    let right = k.mul(&k.basis_vec(*a2), &k.basis_vec(b))?;
                    for (s, ls) in left.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                        for (t, rt) in right.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                            push_term(&mut acc, lookup(s, t)?, c * &(ls * rt));
                        }
                    }
                }
                mult.insert((p, q), acc.into_iter().collect());
            }
        }
        let mut comult = Vec::with_capacity(keys.len());
        for kp in &keys {
            let mut acc = BTreeMap::new();
            for (x1, x2, c) in h.comult_basis(kp[0]) {
                for (a1, a2, d) in k.comult_basis(kp[1]) {
                    *acc.entry((lookup(*x1, *a1)?, lookup(*x2, *a2)?))
                        .or_insert_with(Rat::zero) += c * d;
                }
            }
            comult.push(triples(acc));
        }
        let dim = keys.len();
        let mut antipode = Mat::zeros(dim, dim);
        for (p, kp) in keys.iter().enumerate() {
            let sx = h.antipode(&h.basis_vec(kp[0]));
            let mut acc = BTreeMap::new();
            for (a1, a2, c) in k.comult_basis(kp[1]) {
                let left = action.act(&k.antipode(&k.basis_vec(*a1)), &sx)?;
                let right = k.antipode(&k.basis_vec(*a2));
                for (s, ls) in left.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    for (t, rt) in right.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                        push_term(&mut acc, lookup(s, t)?, c * &(ls * rt));
                    }
                }
            }
            for (q, v) in acc {
                antipode[(q, p)] = v;
            }
        }
        let counit = keys
            .iter()
            .map(|p| &h.counit[p[0]] * &k.counit[p[1]])
            .collect();
        Ok(GradedTruncation {
            name: format!("{}#{}", h.name, k.name),
            budget: n,
            labels,
            unit: lookup(h.unit, k.unit)?,
            keys,
            index,
            degrees,
            mult,
            comult,
            counit,
            antipode,
            graded: h.graded && k.graded && action.homogeneous,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// The word, PBW sequence or pair of indices naming basis element `i`.
    pub fn key(&self, i: usize) -> &[usize] {
        &self.keys[i]
    }

    pub fn index_of_key(&self, key: &[usize]) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// True when every product is homogeneous, so that degree `> N` is an ideal.
    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// Highest degree with a nonzero coefficient.
    pub fn degree_of(&self, v: &[Rat]) -> usize {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| self.degrees[i])
            .max()
            .unwrap_or(0)
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Rat> {
        let mut v = zero_vec(self.dim());
        v[i] = Rat::one();
        v
    }

    pub fn one(&self) -> Vec<Rat> {
        self.basis_vec(self.unit)
    }

    pub fn zero(&self) -> Vec<Rat> {
        zero_vec(self.dim())
    }

    /// `e_i e_j`, or `None` when `deg i + deg j > N`.
    pub fn mul_basis(&self, i: usize, j: usize) -> Option<&[(usize, Rat)]> {
        self.mult.get(&(i, j)).map(Vec::as_slice)
    }

    /// Product of two elements. Components whose degrees add up beyond the
    /// budget are dropped when the truncation is graded and reported otherwise.
    pub fn mul(&self, a: &[Rat], b: &[Rat]) -> Result<Vec<Rat>, FreeError> {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                match self.mult.get(&(i, j)) {
                    Some(terms) => {
                        let xy = x * y;
                        for (k, c) in terms {
                            out[*k] += &xy * c;
                        }
                    }
                    None if self.graded => {}
                    None => {
                        return Err(FreeError::BudgetExceeded {
                            needed: self.degrees[i] + self.degrees[j],
                            budget: self.budget,
                        })
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_many(&self, factors: &[&[Rat]]) -> Result<Vec<Rat>, FreeError> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn comult_basis(&self, i: usize) -> &[(usize, usize, Rat)] {
        &self.comult[i]
    }

    /// `(Δ⊗id)Δ(e_i)` as quadruples.
    pub fn comult2_basis(&self, i: usize) -> Vec<(usize, usize, usize, Rat)> {
        let mut acc: BTreeMap<(usize, usize, usize), Rat> = BTreeMap::new();
        for (p, r, c) in &self.comult[i] {
            for (s, t, d) in &self.comult[*p] {
                *acc.entry((*s, *t, *r)).or_insert_with(Rat::zero) += c * d;
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((a, b, c), v)| (a, b, c, v))
            .collect()
    }

    pub fn comult(&self, v: &[Rat]) -> BTreeMap<(usize, usize), Rat> {
        let mut acc = BTreeMap::new();
        for (i, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (a, b, c) in &self.comult[i] {
                *acc.entry((*a, *b)).or_insert_with(Rat::zero) += x * c;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        acc
    }

    fn comult_is_symmetric(&self, i: usize) -> bool {
        let mut fwd: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        for (a, b, c) in &self.comult[i] {
            *fwd.entry((*a, *b)).or_insert_with(Rat::zero) += c;
            *fwd.entry((*b, *a)).or_insert_with(Rat::zero) -= c;
        }
        fwd.values().all(Rat::is_zero)
    }

    pub fn is_cocommutative(&self) -> bool {
        (0..self.dim()).all(|i| self.comult_is_symmetric(i))
    }

    pub fn counit(&self, v: &[Rat]) -> Rat {
        v.iter().zip(&self.counit).map(|(a, b)| a * b).sum()
    }

    pub fn counit_vector(&self) -> &[Rat] {
        &self.counit
    }

    pub fn antipode(&self, v: &[Rat]) -> Vec<Rat> {
        self.antipode.apply(v).expect("square")
    }

    pub fn antipode_matrix(&self) -> &Mat {
        &self.antipode
    }

    /// Basis pairs `(i, j)` with `deg i + deg j ≤ N`.
    pub fn in_budget_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mult.keys().copied()
    }

    /// Number of basis pairs whose product leaves the budget.
    pub fn out_of_budget_pairs(&self) -> usize {
        self.dim() * self.dim() - self.mult.len()
    }

    /// Dimension of each degree `0..=N`.
    pub fn graded_dims(&self) -> Vec<usize> {
        let mut out = vec![0; self.budget + 1];
        for &d in &self.degrees {
            out[d] += 1;
        }
        out
    }

    pub fn format(&self, v: &[Rat]) -> String {
        format_combination(&self.labels, v)
    }
}

impl Coalgebra for GradedTruncation {
    fn coalgebra_dim(&self) -> usize {
        self.dim()
    }

    fn comult_terms(&self, i: usize) -> Vec<(usize, usize, Rat)> {
        self.comult[i].clone()
    }

    fn counit_of(&self, i: usize) -> Rat {
        self.counit[i].clone()
    }

    fn unit_element(&self) -> Vec<Rat> {
        self.one()
    }
}

fn word_label(w: &[usize]) -> String {
    if w.is_empty() {
        String::from("1")
    } else {
        w.iter().map(|&a| letter(a)).collect()
    }
}

/// Rewrites products of Lie basis elements into non-decreasing order.
struct Straightener<'a> {
    lie: &'a FinLie,
    memo: BTreeMap<Vec<usize>, BTreeMap<Vec<usize>, Rat>>,
}

impl Straightener<'_> {
    fn normal_form(&mut self, seq: &[usize]) -> BTreeMap<Vec<usize>, Rat> {
        if let Some(r) = self.memo.get(seq) {
            return r.clone();
        }
        let out = match (0..seq.len().saturating_sub(1)).find(|&p| seq[p] > seq[p + 1]) {
            None => BTreeMap::from([(seq.to_vec(), Rat::one())]),
            Some(p) => {
                // e_j e_i = e_i e_j + [e_j, e_i]
                let mut swapped = seq.to_vec();
                swapped.swap(p, p + 1);
                let mut acc = self.normal_form(&swapped);
                let br = self.lie.bracket_basis(seq[p], seq[p + 1]).to_vec();
                for (k, c) in br.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let mut shorter = seq[..p].to_vec();
                    shorter.push(k);
                    shorter.extend_from_slice(&seq[p + 2..]);
                    for (s, d) in self.normal_form(&shorter) {
                        *acc.entry(s).or_insert_with(Rat::zero) += c * &d;
                    }
                }
                acc.retain(|_, c| !c.is_zero());
                acc
            }
        };
        self.memo.insert(seq.to_vec(), out.clone());
        out
    }
}

/// An action of one truncation on another, stored for pairs `deg a + deg x ≤ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncAction {
    acting: Arc<GradedTruncation>,
    target: Arc<GradedTruncation>,
    table: BTreeMap<(usize, usize), Vec<Rat>>,
    /// `deg(a⇀x) = deg a + deg x` for every stored entry.
    homogeneous: bool,
}

impl TruncAction {
    /// `table[a][x] = a⇀x`; entries beyond the target budget are ignored. The
    /// action must not raise degree beyond `deg a + deg x`.
    pub fn new(
        acting: Arc<GradedTruncation>,
        target: Arc<GradedTruncation>,
        table: Vec<Vec<Vec<Rat>>>,
    ) -> Result<Self, FreeError> {
        let n = target.budget.max(acting.budget);
        if table.len() != acting.dim() || table.iter().any(|r| r.len() != target.dim()) {
            return Err(FreeError::Malformed(
                "action table has the wrong shape".into(),
            ));
        }
        let mut map = BTreeMap::new();
        let mut homogeneous = true;
        for (a, row) in table.into_iter().enumerate() {
            for (x, v) in row.into_iter().enumerate() {
                let d = acting.degrees[a] + target.degrees[x];
                if d > n {
                    continue;
                }
                if v.len() != target.dim() {
                    return Err(FreeError::Malformed(
                        "action value has the wrong length".into(),
                    ));
                }
                for (k, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if target.degrees[k] > d {
                        return Err(FreeError::Malformed(format!(
                            "{}⇀{} leaves the filtration",
                            acting.label(a),
                            target.label(x)
                        )));
                    }
                    if target.degrees[k] != d {
                        homogeneous = false;
                    }
                }
                map.insert((a, x), v);
            }
        }
        Ok(TruncAction {
            acting,
            target,
            table: map,
            homogeneous,
        })
    }

    /// Extension of a Lie action to `U(g)≤N ⇀ U(h)≤N`: generators act as
    /// derivations and PBW monomials act by composition.
    pub fn from_lie(
        action: &LieAction,
        ug: &Arc<GradedTruncation>,
        uh: &Arc<GradedTruncation>,
    ) -> Result<Self, FreeError> {
        let (g, h) = (action.acting(), action.target());
        check_enveloping(ug, g.dim())?;
        check_enveloping(uh, h.dim())?;
        // φ(x)(y) as an element of U(h)
        let phi_embed = |x: usize, y: usize| -> Vec<Rat> {
            let v = action.matrices()[x].col(y);
            let mut out = uh.zero();
            for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if let Some(i) = uh.index_of_key(&[k]) {
                    out[i] = c.clone();
                }
            }
            out
        };
        let derivation = |x: usize, u: &[Rat]| -> Result<Vec<Rat>, FreeError> {
            let mut out = uh.zero();
            for (m, c) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let seq = uh.key(m).to_vec();
                for p in 0..seq.len() {
                    let mut factors: Vec<Vec<Rat>> = Vec::with_capacity(seq.len());
                    for (q, &y) in seq.iter().enumerate() {
                        if q == p {
                            factors.push(phi_embed(x, y));
                        } else {
                            factors.push(
                                uh.basis_vec(uh.index_of_key(&[y]).expect("generator in budget")),
                            );
                        }
                    }
                    let refs: Vec<&[Rat]> = factors.iter().map(Vec::as_slice).collect();
                    let t = uh.mul_many(&refs)?;
                    for (k, v) in t.iter().enumerate() {
                        if !v.is_zero() {
                            out[k] += c * v;
                        }
                    }
                }
            }
            Ok(out)
        };
        let n = uh.budget.max(ug.budget);
        let mut table = vec![vec![uh.zero(); uh.dim()]; ug.dim()];
        for a in 0..ug.dim() {
            for x in 0..uh.dim() {
                if ug.degrees[a] + uh.degrees[x] > n {
                    continue;
                }
                let mut v = uh.basis_vec(x);
                for &gi in ug.key(a).iter().rev() {
                    v = derivation(gi, &v)?;
                }
                table[a][x] = v;
            }
        }
        Self::new(ug.clone(), uh.clone(), table)
    }

    pub fn acting(&self) -> &Arc<GradedTruncation> {
        &self.acting
    }

    pub fn target(&self) -> &Arc<GradedTruncation> {
        &self.target
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn act_basis(&self, a: usize, x: usize) -> Option<&[Rat]> {
        self.table.get(&(a, x)).map(Vec::as_slice)
    }

    /// `a⇀x`; out-of-budget pairs are dropped for homogeneous actions on a
    /// graded target and reported otherwise.
    pub fn act(&self, a: &[Rat], x: &[Rat]) -> Result<Vec<Rat>, FreeError> {
        let mut out = self.target.zero();
        for (i, p) in a.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for (j, q) in x.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
                match self.table.get(&(i, j)) {
                    Some(v) => {
                        let pq = p * q;
                        for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                            out[k] += &pq * c;
                        }
                    }
                    None if self.homogeneous && self.target.graded => {}
                    None => {
                        return Err(FreeError::BudgetExceeded {
                            needed: self.acting.degrees[i] + self.target.degrees[j],
                            budget: self.target.budget,
                        })
                    }
                }
            }
        }
        Ok(out)
    }
}

fn check_enveloping(u: &GradedTruncation, d: usize) -> Result<(), FreeError> {
    // generators are exactly the one-letter PBW keys
    if (0..u.dim())
        .filter(|&i| u.key(i).len() == 1)
        .any(|i| u.key(i)[0] >= d)
    {
        return Err(FreeError::Malformed(format!(
            "`{}` is not built on this Lie algebra",
            u.name()
        )));
    }
    Ok(())
}

/// A linear map between truncations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncMap {
    domain: Arc<GradedTruncation>,
    codomain: Arc<GradedTruncation>,
    matrix: Mat,
}

impl TruncMap {
    pub fn new(
        domain: Arc<GradedTruncation>,
        codomain: Arc<GradedTruncation>,
        matrix: Mat,
    ) -> Result<Self, FreeError> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(FreeError::Malformed(format!(
                "map must be {}x{}",
                codomain.dim(),
                domain.dim()
            )));
        }
        Ok(TruncMap {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn from_images(
        domain: &Arc<GradedTruncation>,
        codomain: &Arc<GradedTruncation>,
        images: &[Vec<Rat>],
    ) -> Result<Self, FreeError> {
        let m = Mat::from_columns(codomain.dim(), images)
            .map_err(|e| FreeError::Malformed(e.to_string()))?;
        Self::new(domain.clone(), codomain.clone(), m)
    }

    pub fn identity(t: &Arc<GradedTruncation>) -> Self {
        TruncMap {
            domain: t.clone(),
            codomain: t.clone(),
            matrix: Mat::identity(t.dim()),
        }
    }

    pub fn unit_counit(domain: &Arc<GradedTruncation>, codomain: &Arc<GradedTruncation>) -> Self {
        let images: Vec<Vec<Rat>> = (0..domain.dim())
            .map(|i| {
                let e = &domain.counit[i];
                codomain.one().iter().map(|c| c * e).collect()
            })
            .collect();
        Self::from_images(domain, codomain, &images).expect("shapes agree")
    }

    pub fn antipode(t: &Arc<GradedTruncation>) -> Self {
        TruncMap {
            domain: t.clone(),
            codomain: t.clone(),
            matrix: t.antipode.clone(),
        }
    }

    pub fn domain(&self) -> &Arc<GradedTruncation> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<GradedTruncation> {
        &self.codomain
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.matrix.apply(v).expect("shape")
    }

    pub fn image(&self, i: usize) -> Vec<Rat> {
        self.matrix.col(i)
    }

    pub fn compose(&self, inner: &TruncMap) -> Result<TruncMap, FreeError> {
        let m = self
            .matrix
            .mul(&inner.matrix)
            .map_err(|e| FreeError::Malformed(e.to_string()))?;
        Self::new(inner.domain.clone(), self.codomain.clone(), m)
    }

    /// Overwrites one matrix entry; used to build perturbed candidates.
    pub fn with_entry(&self, row: usize, col: usize, value: Rat) -> TruncMap {
        let mut m = self.clone();
        m.matrix[(row, col)] = value;
        m
    }

    pub fn is_bijective(&self) -> bool {
        self.matrix.is_invertible()
    }
}
