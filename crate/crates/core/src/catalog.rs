//! Named algebras, groups, actions and fixtures.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::actions::ActionData;
use crate::exactlin::{q, Mat, Rat};
use crate::groups::{group_algebra, FinGroup, GroupAction};
use crate::hopf::{validate_hopf, FinDimHopf, LinMap, SparseVec};
use crate::lie::FinLie;
use crate::solver::{Ansatz, ScheduledGenerator, SearchPlan};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog name `{0}`")]
    Unknown(String),
}

pub const GROUP_NAMES: [&str; 5] = ["C2", "C4", "C2xC2", "S3", "D4"];
pub const HOPF_NAMES: [&str; 7] = ["kC2", "kC4", "kC2xC2", "kS3", "kD4", "H4", "H8"];
pub const LIE_NAMES: [&str; 2] = ["aff1", "sl2"];

pub fn c2() -> FinGroup {
    FinGroup::cyclic(2, "g")
}

pub fn c4() -> FinGroup {
    FinGroup::cyclic(4, "r")
}

/// `C2×C2` as `{1, x, y, xy}` with bitwise multiplication.
pub fn c2xc2() -> FinGroup {
    let labels = ["1", "x", "y", "xy"].map(String::from).to_vec();
    let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    FinGroup::new("C2xC2", labels, table).expect("Klein four-group")
}

/// `S3` as permutations of `{0, 1, 2}`.
pub fn s3() -> FinGroup {
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
    FinGroup::from_permutations("S3", labels, &perms).expect("S3 is closed")
}

/// Dihedral group of order 8: `r^k` at index `k`, `s r^k` at index `4 + k`.
pub fn d4() -> FinGroup {
    let labels = ["1", "r", "r2", "r3", "s", "sr", "sr2", "sr3"]
        .map(String::from)
        .to_vec();
    // s^a r^i · s^b r^j = s^(a+b) r^((-1)^b i + j)
    let table = (0..8)
        .map(|x: usize| {
            (0..8)
                .map(|y: usize| {
                    let (a, i) = (x / 4, x % 4);
                    let (b, j) = (y / 4, y % 4);
                    let ii = if b == 1 { (4 - i) % 4 } else { i };
                    ((a + b) % 2) * 4 + (ii + j) % 4
                })
                .collect()
        })
        .collect();
    FinGroup::new("D4", labels, table).expect("dihedral table is a group")
}

pub fn group(name: &str) -> Result<FinGroup, CatalogError> {
    match name {
        "C2" => Ok(c2()),
        "C4" => Ok(c4()),
        "C2xC2" => Ok(c2xc2()),
        "S3" => Ok(s3()),
        "D4" => Ok(d4()),
        _ => Err(CatalogError::Unknown(name.to_string())),
    }
}

/// Sweedler's algebra on `[1, g, x, gx]`: `g² = 1`, `x² = 0`, `gx = −xg`,
/// `Δ(x) = x⊗1 + g⊗x`, `S(x) = −gx`.
pub fn h4() -> FinDimHopf {
    let basis: Vec<String> = ["1", "g", "x", "gx"].map(String::from).to_vec();
    let one = Rat::one;
    let m1 = || -Rat::one();
    // products e_i e_j, row-major
    let table: [[Option<(usize, bool)>; 4]; 4] = [
        [
            Some((0, true)),
            Some((1, true)),
            Some((2, true)),
            Some((3, true)),
        ],
        [
            Some((1, true)),
            Some((0, true)),
            Some((3, true)),
            Some((2, true)),
        ],
        [Some((2, true)), Some((3, false)), None, None],
        [Some((3, true)), Some((2, false)), None, None],
    ];
    let mult: Vec<SparseVec> = table
        .iter()
        .flat_map(|row| row.iter())
        .map(|e| match e {
            None => vec![],
            Some((k, pos)) => vec![(*k, if *pos { one() } else { m1() })],
        })
        .collect();
    let comult = vec![
        vec![(0, 0, one())],
        vec![(1, 1, one())],
        vec![(2, 0, one()), (1, 2, one())],
        vec![(3, 1, one()), (0, 3, one())],
    ];
    let counit = vec![one(), one(), Rat::zero(), Rat::zero()];
    let antipode =
        Mat::from_int_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
    let h = FinDimHopf::from_sparse(
        "H4".into(),
        basis,
        mult,
        vec![one(), Rat::zero(), Rat::zero(), Rat::zero()],
        comult,
        counit,
        antipode,
        Some(vec![0, 1]),
    )
    .expect("H4 shapes");
    debug_assert!(validate_hopf(&h).passes());
    h
}

/// The swap `x ↔ y` on group indices `0..4` of `{1, x, y, xy}`.
pub fn h8_sigma(g: usize) -> usize {
    match g {
        1 => 2,
        2 => 1,
        other => other,
    }
}

/// Kac–Paljutkin algebra on `[1, x, y, xy, z, xz, yz, xyz]`, with
/// `z² = ½(1 + x + y − xy)`, `zx = yz`, `zy = xz` and
/// `Δ(z) = ½(z⊗z + z⊗xz + yz⊗z − yz⊗xz)`.
pub fn h8() -> FinDimHopf {
    let basis: Vec<String> = ["1", "x", "y", "xy", "z", "xz", "yz", "xyz"]
        .map(String::from)
        .to_vec();
    let half = q(1, 2);
    let z_squared = |k: usize| -> SparseVec {
        // k·½(1 + x + y − xy)
        let mut terms = vec![
            (k, half.clone()),
            (k ^ 1, half.clone()),
            (k ^ 2, half.clone()),
            (k ^ 3, -&half),
        ];
        terms.sort_by_key(|t| t.0);
        terms
    };
    let mut mult = Vec::with_capacity(64);
    for i in 0..8 {
        for j in 0..8 {
            let (g, gz) = (i % 4, i >= 4);
            let (h, hz) = (j % 4, j >= 4);
            let entry: SparseVec = match (gz, hz) {
                (false, false) => vec![(g ^ h, Rat::one())],
                (false, true) => vec![(4 + (g ^ h), Rat::one())],
                (true, false) => vec![(4 + (g ^ h8_sigma(h)), Rat::one())],
                (true, true) => z_squared(g ^ h8_sigma(h)),
            };
            mult.push(entry);
        }
    }
    let mut comult = Vec::with_capacity(8);
    for g in 0..4 {
        comult.push(vec![(g, g, Rat::one())]);
    }
    for g in 0..4 {
        // (g⊗g)·½(z⊗z + z⊗xz + yz⊗z − yz⊗xz)
        let (z, xz, yz) = (4 + g, 4 + (g ^ 1), 4 + (g ^ 2));
        comult.push(vec![
            (z, z, half.clone()),
            (z, xz, half.clone()),
            (yz, z, half.clone()),
            (yz, xz, -&half),
        ]);
    }
    let mut antipode = Mat::zeros(8, 8);
    for g in 0..4 {
        antipode[(g, g)] = Rat::one();
        antipode[(4 + h8_sigma(g), 4 + g)] = Rat::one();
    }
    let mut unit = vec![Rat::zero(); 8];
    unit[0] = Rat::one();
    let h = FinDimHopf::from_sparse(
        "H8".into(),
        basis,
        mult,
        unit,
        comult,
        vec![Rat::one(); 8],
        antipode,
        Some(vec![0, 1, 2, 3]),
    )
    .expect("H8 shapes");
    debug_assert!(validate_hopf(&h).passes());
    h
}

pub fn hopf(name: &str) -> Result<FinDimHopf, CatalogError> {
    match name {
        "H4" => Ok(h4()),
        "H8" => Ok(h8()),
        _ => {
            let g = name
                .strip_prefix('k')
                .ok_or_else(|| CatalogError::Unknown(name.to_string()))?;
            group(g)
                .map(|g| group_algebra(&g))
                .map_err(|_| CatalogError::Unknown(name.to_string()))
        }
    }
}

pub fn lie(name: &str) -> Result<FinLie, CatalogError> {
    match name {
        "aff1" => Ok(FinLie::two_dim_nonabelian()),
        "sl2" => Ok(FinLie::sl2()),
        _ => Err(CatalogError::Unknown(name.to_string())),
    }
}

/// `C2 = ⟨s⟩` acting on `C4 = ⟨r⟩` by inversion.
pub fn inversion_group_action() -> GroupAction {
    let c2 = Arc::new(FinGroup::cyclic(2, "s"));
    let c4 = Arc::new(c4());
    GroupAction::new(c2, c4, vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]])
        .expect("inversion is an action")
}

/// `kC2` acting on `kC4` by inversion, `s ⇀ r = r³`. The acting algebra's
/// generator is labelled `s`.
pub fn inversion_action() -> ActionData {
    let ga = inversion_group_action();
    let kc2 = Arc::new(group_algebra(ga.acting()));
    let kc4 = Arc::new(group_algebra(ga.target()));
    ActionData::from_group_action(&ga, &kc2, &kc4).expect("group algebras match")
}

/// Images of the basis under a map of `H8` fixing or swapping `x, y`.
fn h8_map(h: &Arc<FinDimHopf>, swap: bool, z_image: &[(usize, Rat)]) -> LinMap {
    let s = |g: usize| if swap { h8_sigma(g) } else { g };
    let mut images = Vec::with_capacity(8);
    for g in 0..4 {
        images.push(h.basis_vec(s(g)));
    }
    let mut z = h.zero();
    for (k, c) in z_image {
        z[*k] = c.clone();
    }
    for g in 0..4 {
        images.push(h.mul(&h.basis_vec(s(g)), &z));
    }
    LinMap::from_images(h, &images).expect("8 images")
}

/// The four Hopf automorphisms of `H8`, the identity first, then `z ↦ xyz`,
/// then the two swaps `x ↔ y` with `z ↦ ½(1+x+y−xy)z` and `z ↦ ½(−1+x+y+xy)z`.
pub fn h8_automorphisms(h: &Arc<FinDimHopf>) -> Vec<LinMap> {
    let half = q(1, 2);
    vec![
        LinMap::identity(h),
        h8_map(h, false, &[(7, Rat::one())]),
        h8_map(
            h,
            true,
            &[
                (4, half.clone()),
                (5, half.clone()),
                (6, half.clone()),
                (7, -&half),
            ],
        ),
        h8_map(
            h,
            true,
            &[
                (4, -&half),
                (5, half.clone()),
                (6, half.clone()),
                (7, half.clone()),
            ],
        ),
    ]
}

/// The automorphism swapping `x` and `y` with `z ↦ ½(1+x+y−xy)z`.
pub fn h8_swap_automorphism(h: &Arc<FinDimHopf>) -> LinMap {
    h8_automorphisms(h).swap_remove(2)
}

/// `p·z` for `p` given by its coefficients on `[1, x, y, xy]`.
fn h8_times_z(h: &FinDimHopf, p: [i64; 4], den: i64) -> Vec<Rat> {
    let mut v = h.zero();
    for (g, c) in p.iter().enumerate() {
        v[4 + g] = q(*c, den);
    }
    v
}

/// Expected bijective difference operators on `H8`, as published: eight tables
/// named `D1`..`D8` giving the images of `[1, x, y, xy, z, xz, yz, xyz]`.
pub fn h8_published_tables(h: &Arc<FinDimHopf>) -> Vec<(String, LinMap)> {
    let a = [1, 1, 1, -1];
    let b = [1, 1, -1, 1];
    let c = [1, -1, 1, 1];
    let e = [-1, 1, 1, 1];
    let swapped: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    let mut out = Vec::new();
    for (k, ps) in [[a, c, b, e], [b, e, a, c], [c, a, e, b], [e, b, c, a]]
        .iter()
        .enumerate()
    {
        let mut images: Vec<Vec<Rat>> = (0..4).map(|g| h.basis_vec(g)).collect();
        images.extend(ps.iter().map(|p| h8_times_z(h, *p, 2)));
        out.push((
            alloc::format!("D{}", k + 1),
            LinMap::from_images(h, &images).expect("8 images"),
        ));
    }
    for (k, zs) in swapped.iter().enumerate() {
        let mut images: Vec<Vec<Rat>> = (0..4).map(|g| h.basis_vec(h8_sigma(g))).collect();
        images.extend(zs.iter().map(|&g| h.basis_vec(4 + g)));
        out.push((
            alloc::format!("D{}", k + 5),
            LinMap::from_images(h, &images).expect("8 images"),
        ));
    }
    out
}

/// The published classification of `H4`: only `u∘ε`.
pub fn h4_published_tables(h: &Arc<FinDimHopf>) -> Vec<(String, LinMap)> {
    vec![("u∘ε".into(), LinMap::unit_counit(h, h))]
}

/// Published tables for catalog algebras that have them.
pub fn published_tables(h: &Arc<FinDimHopf>) -> Option<Vec<(String, LinMap)>> {
    match h.name() {
        "H4" => Some(h4_published_tables(h)),
        "H8" => Some(h8_published_tables(h)),
        _ => None,
    }
}

/// Search plan for `H4`: schedule `x` with `Δ(x)` supported on `1, g, x`.
pub fn h4_plan(h: &Arc<FinDimHopf>) -> SearchPlan {
    let schedule = vec![ScheduledGenerator {
        index: 2,
        support: vec![0, 1, 2],
        ansatz: Ansatz::Free,
    }];
    SearchPlan::new(h.clone(), schedule, None).expect("H4 plan")
}

/// Search plan for `H8`: schedule `z`, with `D(z) ∈ kG·z` under bijectivity
/// and the swap as commutation data.
pub fn h8_plan(h: &Arc<FinDimHopf>) -> SearchPlan {
    let schedule = vec![ScheduledGenerator {
        index: 4,
        support: vec![4, 5, 6, 7],
        ansatz: Ansatz::GroupTimes,
    }];
    SearchPlan::new(h.clone(), schedule, Some((0..4).map(h8_sigma).collect())).expect("H8 plan")
}

/// Default plan for a catalog algebra: group algebras need no schedule.
pub fn plan(h: &Arc<FinDimHopf>) -> Result<SearchPlan, CatalogError> {
    match h.name() {
        "H4" => Ok(h4_plan(h)),
        "H8" => Ok(h8_plan(h)),
        name => SearchPlan::new(h.clone(), Vec::new(), None)
            .map_err(|_| CatalogError::Unknown(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_algebras_validate() {
        for name in HOPF_NAMES {
            let h = hopf(name).unwrap();
            assert!(validate_hopf(&h).passes(), "{name}");
        }
    }

    #[test]
    fn h8_z_squared() {
        let h = h8();
        let z = h.basis_vec(4);
        assert_eq!(h.format(&h.mul(&z, &z)), "1/2 + 1/2*x + 1/2*y - 1/2*xy");
        assert_eq!(h.comult_basis(4).len(), 4);
    }

    #[test]
    fn h8_automorphisms_are_automorphisms() {
        let h = Arc::new(h8());
        for s in h8_automorphisms(&h) {
            assert!(s.is_hopf_automorphism());
        }
    }

    #[test]
    fn d4_is_nonabelian_of_order_8() {
        let g = d4();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
    }
}
