use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::{Mat, Rat};
use crate::hopf::{FinDimHopf, HopfError, LinMap};

use super::GroupError;

pub const DEFAULT_ENDO_BOUND: usize = 24;

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FinGroup {
    /// Validates the table: Latin square, two-sided identity, inverses, associativity.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        let n = labels.len();
        if n == 0 {
            return Err(GroupError::Malformed("empty group".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(GroupError::Malformed(format!("table must be {n}x{n}")));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(GroupError::Malformed("table entry out of range".into()));
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                if core::mem::replace(&mut row_seen[table[i][j]], true)
                    || core::mem::replace(&mut col_seen[table[j][i]], true)
                {
                    return Err(GroupError::Malformed(format!(
                        "not a Latin square at index {i}"
                    )));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GroupError::Malformed("no two-sided identity".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| {
                    GroupError::Malformed(format!("element {a} has no two-sided inverse"))
                })?;
            inverses.push(b);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FinGroup {
            name: name.into(),
            labels,
            table,
            identity,
            inverses,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn mul_all(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    /// Subgroup generated by `gens`, as a sorted index list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    /// Lexicographically first generating set of minimal size.
    pub fn minimal_generating_set(&self) -> Vec<usize> {
        let n = self.order();
        if n == 1 {
            return Vec::new();
        }
        for k in 1..=n {
            let mut combo: Vec<usize> = (0..k).collect();
            loop {
                if self.generated(&combo).len() == n {
                    return combo;
                }
                // Advance to the next k-subset in lexicographic order.
                let mut i = k;
                while i > 0 && combo[i - 1] == n - k + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                combo[i - 1] += 1;
                for j in i..k {
                    combo[j] = combo[j - 1] + 1;
                }
            }
        }
        unreachable!("the whole group generates itself")
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Cyclic group `C_n` with labels `1, r, r2, …` (or `1, g` for `n = 2`).
    pub fn cyclic(n: usize, gen: &str) -> Self {
        let labels = (0..n)
            .map(|k| match k {
                0 => String::from("1"),
                1 => String::from(gen),
                _ => format!("{gen}{k}"),
            })
            .collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FinGroup::new(format!("C{n}"), labels, table).expect("cyclic table is a group")
    }

    /// Direct product with pairs ordered `(a, b)` at index `a*|H| + b`.
    pub fn direct_product(&self, other: &FinGroup, name: impl Into<String>) -> Self {
        let (m, n) = (self.order(), other.order());
        let labels = (0..m * n)
            .map(|k| {
                let (a, b) = (k / n, k % n);
                match (a == self.identity, b == other.identity) {
                    (true, true) => String::from("1"),
                    (true, false) => other.labels[b].clone(),
                    (false, true) => self.labels[a].clone(),
                    (false, false) => format!("{}{}", self.labels[a], other.labels[b]),
                }
            })
            .collect();
        let table = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| self.mul(x / n, y / n) * n + other.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        FinGroup::new(name, labels, table).expect("product of groups is a group")
    }

    /// Group of the given permutations (closed under composition), `(pq)(i) = p(q(i))`.
    pub fn from_permutations(
        name: impl Into<String>,
        labels: Vec<String>,
        perms: &[Vec<usize>],
    ) -> Result<Self, GroupError> {
        let compose =
            |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
        let n = perms.len();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let c = compose(&perms[a], &perms[b]);
                table[a][b] = perms
                    .iter()
                    .position(|p| *p == c)
                    .ok_or_else(|| GroupError::Malformed("permutations not closed".into()))?;
            }
        }
        FinGroup::new(name, labels, table)
    }
}

/// A set map between groups, stored as the image of each element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupMap {
    pub source: Arc<FinGroup>,
    pub target: Arc<FinGroup>,
    pub images: Vec<usize>,
}

impl GroupMap {
    pub fn new(
        source: Arc<FinGroup>,
        target: Arc<FinGroup>,
        images: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if images.len() != source.order() {
            return Err(GroupError::Malformed(format!(
                "{} images for a group of order {}",
                images.len(),
                source.order()
            )));
        }
        if images.iter().any(|&i| i >= target.order()) {
            return Err(GroupError::Malformed("image out of range".into()));
        }
        Ok(GroupMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(g: &Arc<FinGroup>) -> Self {
        GroupMap {
            source: g.clone(),
            target: g.clone(),
            images: (0..g.order()).collect(),
        }
    }

    pub fn trivial(source: &Arc<FinGroup>, target: &Arc<FinGroup>) -> Self {
        GroupMap {
            source: source.clone(),
            target: target.clone(),
            images: vec![target.identity(); source.order()],
        }
    }

    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupMap) -> GroupMap {
        GroupMap {
            source: other.source.clone(),
            target: self.target.clone(),
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.source.order() == self.target.order()
            && self
                .images
                .iter()
                .all(|&i| !core::mem::replace(&mut seen[i], true))
    }

    pub fn is_group_hom(&self) -> bool {
        let (g, h) = (&self.source, &self.target);
        (0..g.order()).all(|a| {
            (0..g.order())
                .all(|b| self.images[g.mul(a, b)] == h.mul(self.images[a], self.images[b]))
        })
    }
}

/// All endomorphisms of `g`, sorted lexicographically by image vector.
pub fn enumerate_endos(g: &Arc<FinGroup>) -> Result<Vec<GroupMap>, GroupError> {
    enumerate_endos_bounded(g, DEFAULT_ENDO_BOUND)
}

pub fn enumerate_endos_bounded(
    g: &Arc<FinGroup>,
    bound: usize,
) -> Result<Vec<GroupMap>, GroupError> {
    let n = g.order();
    if n > bound {
        return Err(GroupError::OrderTooLarge { order: n, bound });
    }
    let gens = g.minimal_generating_set();
    let k = gens.len();
    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        if let Some(images) = extend_from_generators(g, &gens, &choice) {
            let f = GroupMap {
                source: g.clone(),
                target: g.clone(),
                images,
            };
            if f.is_group_hom() {
                out.push(f);
            }
        }
        let mut i = k;
        loop {
            if i == 0 {
                out.sort_by(|a, b| a.images.cmp(&b.images));
                out.dedup_by(|a, b| a.images == b.images);
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < n {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Extends generator images along words; `None` on an inconsistency.
fn extend_from_generators(
    g: &FinGroup,
    gens: &[usize],
    gen_images: &[usize],
) -> Option<Vec<usize>> {
    let n = g.order();
    let mut img: Vec<Option<usize>> = vec![None; n];
    img[g.identity()] = Some(g.identity());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(a) = queue.pop_front() {
        let fa = img[a].expect("queued elements have images");
        for (s, &fs) in gens.iter().zip(gen_images) {
            let b = g.mul(a, *s);
            let fb = g.mul(fa, fs);
            match img[b] {
                None => {
                    img[b] = Some(fb);
                    queue.push_back(b);
                }
                Some(x) if x != fb => return None,
                Some(_) => {}
            }
        }
    }
    img.into_iter().collect()
}

/// First pair `(g, h)` where `D(gh) = D(g)·g·D(h)·g⁻¹` fails.
pub fn group_diffop_witness(d: &GroupMap) -> Option<(usize, usize)> {
    let g = &d.source;
    for a in 0..g.order() {
        for b in 0..g.order() {
            let rhs = g.mul_all(&[d.apply(a), a, d.apply(b), g.inv(a)]);
            if d.apply(g.mul(a, b)) != rhs {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn check_group_diffop(d: &GroupMap) -> bool {
    d.source == d.target && group_diffop_witness(d).is_none()
}

/// Pairs `(F, D)` with `D(g) = F(g)g⁻¹`, verified in both directions.
pub fn endo_diffop_bijection(g: &Arc<FinGroup>) -> Result<Vec<(GroupMap, GroupMap)>, GroupError> {
    let endos = enumerate_endos(g)?;
    let mut pairs = Vec::with_capacity(endos.len());
    for f in endos {
        let d = endo_to_group_diffop(&f);
        if !check_group_diffop(&d) {
            return Err(GroupError::Precondition(format!(
                "F ↦ D failed for the endomorphism {:?}",
                f.images
            )));
        }
        if group_diffop_to_endo(&d) != f {
            return Err(GroupError::Precondition(
                "composite D ↦ F ↦ D is not the identity".into(),
            ));
        }
        pairs.push((f, d));
    }
    Ok(pairs)
}

/// `D(g) = F(g)g⁻¹`.
pub fn endo_to_group_diffop(f: &GroupMap) -> GroupMap {
    let g = &f.source;
    GroupMap {
        source: g.clone(),
        target: g.clone(),
        images: (0..g.order())
            .map(|a| g.mul(f.apply(a), g.inv(a)))
            .collect(),
    }
}

/// `F(g) = D(g)g`.
pub fn group_diffop_to_endo(d: &GroupMap) -> GroupMap {
    let g = &d.source;
    GroupMap {
        source: g.clone(),
        target: g.clone(),
        images: (0..g.order()).map(|a| g.mul(d.apply(a), a)).collect(),
    }
}

/// `kG` with `Δ(g) = g⊗g`, `ε(g) = 1`, `S(g) = g⁻¹`.
pub fn group_algebra(g: &FinGroup) -> FinDimHopf {
    let n = g.order();
    let mult = (0..n * n)
        .map(|k| vec![(g.mul(k / n, k % n), Rat::one())])
        .collect();
    let mut unit = vec![Rat::zero(); n];
    unit[g.identity()] = Rat::one();
    let comult = (0..n).map(|i| vec![(i, i, Rat::one())]).collect();
    let mut antipode = Mat::zeros(n, n);
    for i in 0..n {
        antipode[(g.inv(i), i)] = Rat::one();
    }
    FinDimHopf::from_sparse(
        format!("k{}", g.name()),
        g.labels().to_vec(),
        mult,
        unit,
        comult,
        vec![Rat::one(); n],
        antipode,
        Some((0..n).collect()),
    )
    .expect("group algebra shapes are consistent")
}

/// Linear extension of a set map to the group algebras `kG → kH`.
pub fn lift_map(
    f: &GroupMap,
    kg: &Arc<FinDimHopf>,
    kh: &Arc<FinDimHopf>,
) -> Result<LinMap, HopfError> {
    if kg.dim() != f.source.order() || kh.dim() != f.target.order() {
        return Err(HopfError::DomainMismatch);
    }
    let mut m = Mat::zeros(kh.dim(), kg.dim());
    for (i, &j) in f.images.iter().enumerate() {
        m[(j, i)] = Rat::one();
    }
    LinMap::new(kg.clone(), kh.clone(), m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<FinGroup> {
        let perms = vec![
            vec![0, 1, 2],
            vec![1, 0, 2],
            vec![2, 1, 0],
            vec![0, 2, 1],
            vec![1, 2, 0],
            vec![2, 0, 1],
        ];
        let labels = ["1", "(12)", "(13)", "(23)", "(123)", "(132)"]
            .map(String::from)
            .to_vec();
        Arc::new(FinGroup::from_permutations("S3", labels, &perms).unwrap())
    }

    #[test]
    fn endomorphism_counts() {
        let c2 = Arc::new(FinGroup::cyclic(2, "g"));
        assert_eq!(enumerate_endos(&c2).unwrap().len(), 2);
        let v4 = Arc::new(c2.direct_product(&c2, "C2xC2"));
        assert_eq!(enumerate_endos(&v4).unwrap().len(), 16);
        assert_eq!(enumerate_endos(&s3()).unwrap().len(), 10);
    }

    #[test]
    fn swapping_r_and_r2_is_not_a_hom() {
        let c4 = Arc::new(FinGroup::cyclic(4, "r"));
        let f = GroupMap::new(c4.clone(), c4, vec![0, 2, 1, 3]).unwrap();
        assert!(!f.is_group_hom());
    }

    #[test]
    fn diffop_examples_on_s3() {
        let g = s3();
        let inv = GroupMap::new(g.clone(), g.clone(), (0..6).map(|a| g.inv(a)).collect()).unwrap();
        assert!(check_group_diffop(&inv));
        assert!(check_group_diffop(&GroupMap::trivial(&g, &g)));
        assert!(!check_group_diffop(&GroupMap::identity(&g)));
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FinGroup::new(
            "bad",
            vec!["a".into(), "b".into()],
            vec![vec![0, 0], vec![1, 1]]
        )
        .is_err());
    }
}
