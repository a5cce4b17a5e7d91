use std::collections::BTreeMap;
use std::sync::Arc;

use hopfdiff::exactlin::{Mat, Rat};
use hopfdiff::free::*;
use hopfdiff::lie::{FinLie, LieAction};

fn r(n: i64) -> Rat {
    Rat::from_int(n)
}

/// Necklace count `(1/n) Σ_{d | n} μ(d) k^{n/d}`.
fn witt(k: i64, n: i64) -> i64 {
    fn mobius(mut d: i64) -> i64 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= d {
            if d % p == 0 {
                d /= p;
                if d % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if d > 1 {
            -sign
        } else {
            sign
        }
    }
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(d) * k.pow((n / d) as u32))
        .sum::<i64>()
        / n
}

fn word(tv: &GradedTruncation, w: &str) -> usize {
    let key: Vec<usize> = w.bytes().map(|b| (b - b'a') as usize).collect();
    tv.index_of_key(&key).unwrap()
}

fn vec_of(tv: &GradedTruncation, terms: &[(&str, i64)]) -> Vec<Rat> {
    let mut v = tv.zero();
    for (w, c) in terms {
        v[word(tv, w)] += r(*c);
    }
    v
}

#[test]
fn witt_oracle_sanity() {
    assert_eq!(
        (1..=4).map(|n| witt(2, n)).collect::<Vec<_>>(),
        vec![2, 1, 2, 3]
    );
    assert_eq!(witt(3, 2), 3);
    assert_eq!(witt(1, 3), 0);
}

#[test]
fn lyndon_counts_match_witt_and_primitives() {
    for (k, n) in [(1, 4), (2, 4), (2, 6), (3, 4)] {
        let dims = lyndon_dims(k, n).unwrap();
        let want: Vec<usize> = (1..=n as i64).map(|d| witt(k as i64, d) as usize).collect();
        assert_eq!(dims.lyndon, want, "k={k} n={n}");
        assert!(dims.agree(), "k={k} n={n}: {:?}", dims.primitive);
    }
}

#[test]
fn lyndon_counts_at_the_hard_cap() {
    let dims = lyndon_dims(3, 6).unwrap();
    assert_eq!(dims.lyndon, vec![3, 3, 8, 18, 48, 116]);
    assert!(dims.agree());
}

#[test]
fn budget_cap_is_enforced() {
    assert!(matches!(
        lyndon_dims(2, 7),
        Err(FreeError::BudgetExceeded { .. })
    ));
    assert!(GradedTruncation::tensor(4, 2).is_err());
}

#[test]
fn coshuffle_expansion_matches_truncation() {
    let d = coshuffle_comult(&[0, 1]);
    let want: BTreeMap<(Vec<usize>, Vec<usize>), Rat> = [
        ((vec![0, 1], vec![]), r(1)),
        ((vec![0], vec![1]), r(1)),
        ((vec![1], vec![0]), r(1)),
        ((vec![], vec![0, 1]), r(1)),
    ]
    .into_iter()
    .collect();
    assert_eq!(d, want);
    assert_eq!(coshuffle_comult(&[]).len(), 1);
    assert_eq!(coshuffle_comult(&[0, 0])[&(vec![0], vec![0])], r(2));

    let tv = GradedTruncation::tensor(2, 4).unwrap();
    for i in 0..tv.dim() {
        let mut expanded: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        for ((l, rt), c) in coshuffle_comult(tv.key(i)) {
            let key = (tv.index_of_key(&l).unwrap(), tv.index_of_key(&rt).unwrap());
            *expanded.entry(key).or_insert_with(Rat::zero) += c;
        }
        assert_eq!(tv.comult(&tv.basis_vec(i)), expanded, "{}", tv.label(i));
    }
}

#[test]
fn out_of_budget_products_are_reported() {
    let tv = GradedTruncation::tensor(2, 2).unwrap();
    assert!(tv.mul_basis(word(&tv, "ab"), word(&tv, "a")).is_none());
    assert_eq!(
        tv.out_of_budget_pairs() + tv.in_budget_pairs().count(),
        tv.dim() * tv.dim()
    );
}

#[test]
fn zero_hom_gives_unit_counit() {
    let tv = Arc::new(GradedTruncation::tensor(2, 3).unwrap());
    let d = diffop_from_hom(&tv, &[tv.zero(), tv.zero()]).unwrap();
    assert_eq!(d.map, TruncMap::unit_counit(&tv, &tv));
    assert!(d.round_trip);
}

#[test]
fn doubling_hom() {
    let tv = Arc::new(GradedTruncation::tensor(2, 3).unwrap());
    let phi = vec![vec_of(&tv, &[("a", 1)]), vec_of(&tv, &[("b", 1)])];
    let d = diffop_from_hom(&tv, &phi).unwrap();
    assert_eq!(d.map.image(word(&tv, "a")), vec_of(&tv, &[("a", 1)]));
    // F(ab)S(1) + F(a)S(b) + F(b)S(a) + F(1)S(ab) = 4ab - 2ab - 2ba + ba
    assert_eq!(
        d.map.image(word(&tv, "ab")),
        vec_of(&tv, &[("ab", 2), ("ba", -1)])
    );
    assert!(d.pairs.passes());
    assert!(d.round_trip);
}

#[test]
fn bracket_hom_at_degree_three() {
    let tv = Arc::new(GradedTruncation::tensor(2, 3).unwrap());
    let phi = vec![vec_of(&tv, &[("ab", 1), ("ba", -1)]), tv.zero()];
    let d = diffop_from_hom(&tv, &phi).unwrap();
    assert!(d.pairs.passes() && d.pairs.checked > 0);
    assert!(d.round_trip);
}

#[test]
fn non_lie_images_are_rejected() {
    let tv = Arc::new(GradedTruncation::tensor(2, 3).unwrap());
    let phi = vec![vec_of(&tv, &[("ab", 1)]), tv.zero()];
    assert!(matches!(
        diffop_from_hom(&tv, &phi),
        Err(FreeError::NotLie(_))
    ));
}

#[test]
fn free_lie_brackets_and_pbw_iso() {
    let fl = FreeLie::new(2, 4).unwrap();
    assert_eq!(fl.lie().dim(), 2 + 1 + 2 + 3);
    let u = Arc::new(fl.enveloping().unwrap());
    let tv = Arc::new(GradedTruncation::tensor(2, 4).unwrap());
    assert_eq!(u.graded_dims(), tv.graded_dims());
    let phi = fl.pbw_to_tensor(&u, &tv).unwrap();
    assert!(phi.is_bijective());
    assert!(algebra_hom_pairs(&phi).unwrap().passes());
    assert!(coalgebra_witness(&phi).is_none());
}

#[test]
fn extension_of_zero_under_trivial_action() {
    let fl = FreeLie::new(2, 3).unwrap();
    let u = Arc::new(fl.enveloping().unwrap());
    let d = fl.lie().dim();
    let ext = extend_crossed_hom_trunc(
        &Mat::zeros(d, d),
        &LieAction::trivial(fl.lie(), fl.lie()),
        &u,
        &u,
    )
    .unwrap();
    assert_eq!(ext.map, TruncMap::unit_counit(&u, &u));
    assert!(ext.pairs.passes());
}

#[test]
fn extension_of_minus_identity_is_the_antipode() {
    let fl = FreeLie::new(2, 3).unwrap();
    let u = Arc::new(fl.enveloping().unwrap());
    let d = fl.lie().dim();
    let pi = Mat::identity(d).scale(&r(-1));
    let ext = extend_crossed_hom_trunc(&pi, &LieAction::adjoint(fl.lie()), &u, &u).unwrap();
    assert_eq!(ext.map, TruncMap::antipode(&u));
    for i in 0..d {
        let g = u.index_of_key(&[i]).unwrap();
        assert_eq!(
            ext.map.image(g),
            u.basis_vec(g).iter().map(|c| -c).collect::<Vec<_>>()
        );
    }
}

#[test]
fn non_crossed_input_is_rejected() {
    let lie = Arc::new(FinLie::two_dim_nonabelian());
    let u = Arc::new(GradedTruncation::enveloping(&lie, &[1, 1], 2).unwrap());
    // a Lie homomorphism is required under the trivial action; 2·id is not one
    let pi = Mat::identity(2).scale(&r(2));
    let err = extend_crossed_hom_trunc(&pi, &LieAction::trivial(&lie, &lie), &u, &u).unwrap_err();
    assert!(matches!(err, FreeError::Precondition(_)));
}

#[test]
fn mm_check_passes_on_zero_and_minus_identity() {
    let fl = FreeLie::new(2, 3).unwrap();
    let d = fl.lie().dim();
    let zero = mm_instance_check(
        &fl,
        &Mat::zeros(d, d),
        &LieAction::trivial(fl.lie(), fl.lie()),
    )
    .unwrap();
    assert!(zero.passes(), "{zero:?}");
    let adj = LieAction::adjoint(fl.lie());
    let rep = mm_instance_check(&fl, &Mat::identity(d).scale(&r(-1)), &adj).unwrap();
    assert!(rep.passes(), "{rep:?}");
    assert!(rep.uniqueness.unique());
    assert!(rep.club.checked > 0 && rep.diagram.checked > 0);
}

#[test]
fn mm_check_catches_a_perturbed_degree_two_entry() {
    let fl = FreeLie::new(2, 3).unwrap();
    let d = fl.lie().dim();
    let u = Arc::new(fl.enveloping().unwrap());
    let adj = LieAction::adjoint(fl.lie());
    let pi = Mat::identity(d).scale(&r(-1));
    let good = extend_crossed_hom_trunc(&pi, &adj, &u, &u).unwrap().map;
    let m = (0..u.dim()).find(|&m| u.key(m).len() == 2).unwrap();
    let bad = good.with_entry(m, m, &good.matrix()[(m, m)] + &r(1));
    let rep = mm_check_candidate(&fl, &pi, &adj, &bad).unwrap();
    assert_eq!(rep.uniqueness.mismatch, Some(m));
    assert!(!rep.candidate.passes());
    assert!(!rep.passes());
}

#[test]
fn semidirect_with_trivial_action() {
    let a = Arc::new(FinLie::abelian("a", vec!["u".into()]));
    let b = Arc::new(FinLie::abelian("b", vec!["x".into()]));
    let rep = smash_vs_semidirect_trunc(&LieAction::trivial(&b, &a), &[1], &[1], 4).unwrap();
    assert_eq!(rep.semidirect_dims, vec![1, 2, 3, 4, 5]);
    assert!(rep.passes());
}

#[test]
fn semidirect_with_scaling_action() {
    let a = Arc::new(FinLie::abelian("a", vec!["u".into()]));
    let b = Arc::new(FinLie::abelian("b", vec!["x".into()]));
    let act = LieAction::new(b, a, vec![Mat::identity(1)]).unwrap();
    let rep = smash_vs_semidirect_trunc(&act, &[1], &[1], 3).unwrap();
    assert_eq!(rep.semidirect_dims, vec![1, 2, 3, 4]);
    assert_eq!(rep.smash_dims, vec![1, 2, 3, 4]);
    assert!(rep.passes(), "{rep:?}");
}

#[test]
fn graph_matches_enveloping_algebra_of_graph() {
    let fl = FreeLie::new(2, 3).unwrap();
    let d = fl.lie().dim();
    let w = fl.weights();
    let adj = LieAction::adjoint(fl.lie());
    let rep = graph_vs_enveloping_trunc(&Mat::identity(d).scale(&r(-1)), &adj, &w, &w, 3).unwrap();
    assert!(rep.passes(), "{rep:?}");
    // U(L)≤3 has 1, 2, 4, 8 monomials by degree
    assert_eq!(rep.graph_dims, vec![1, 3, 7, 15]);
    assert_eq!(rep.graph_dims, rep.enveloping_dims);
}

#[test]
fn mixed_truncated_ckmm_instance() {
    let rep = ckmm_truncated_instance(4).unwrap();
    assert!(rep.holds(), "{rep:?}");
    assert_eq!(rep.group_restriction, vec![0, 0]);
    assert_eq!(rep.primitive_scalar, Some(r(1)));
    // (id, id) breaks on t, which is odd under the sign action
    assert!(rep.rejected_pair.is_some());
}

#[test]
fn truncated_action_axioms() {
    let fl = FreeLie::new(2, 3).unwrap();
    let u = Arc::new(fl.enveloping().unwrap());
    let ta = TruncAction::from_lie(&LieAction::adjoint(fl.lie()), &u, &u).unwrap();
    assert_eq!(trunc_action_witness(&ta).unwrap(), None);
    assert!(ta.is_homogeneous());
}
