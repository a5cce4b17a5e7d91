use std::collections::BTreeSet;
use std::sync::Arc;

use hopfdiff::catalog;
use hopfdiff::diffops::check_diffop;
use hopfdiff::exactlin::{q, Rat};
use hopfdiff::groups::FinGroup;
use hopfdiff::hopf::{FinDimHopf, LinMap};
use hopfdiff::solver::*;

fn arc(name: &str) -> Arc<FinDimHopf> {
    Arc::new(catalog::hopf(name).unwrap())
}

fn run(name: &str, bijective_only: bool) -> (Arc<FinDimHopf>, ClassificationResult) {
    let h = arc(name);
    let plan = catalog::plan(&h).unwrap();
    let r = classify_diffops(&plan, bijective_only).unwrap();
    (h, r)
}

fn images(m: &LinMap) -> Vec<Vec<Rat>> {
    (0..m.domain().dim()).map(|i| m.image(i)).collect()
}

/// Set maps `G → G` satisfying `D(gh) = D(g)·g·D(h)·g⁻¹`, by direct search.
fn brute_force_group_diffops(g: &FinGroup) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let mut out = BTreeSet::new();
    let mut d = vec![0usize; n];
    loop {
        let ok = (0..n).all(|a| {
            (0..n).all(|b| {
                let rhs = g.mul(g.mul(g.mul(d[a], a), d[b]), g.inv(a));
                d[g.mul(a, b)] == rhs
            })
        });
        if ok {
            out.insert(d.clone());
        }
        let mut k = 0;
        while k < n {
            d[k] += 1;
            if d[k] < n {
                break;
            }
            d[k] = 0;
            k += 1;
        }
        if k == n {
            return out;
        }
    }
}

#[test]
fn h4_has_only_the_unit_counit() {
    let (h, r) = run("H4", false);
    assert!(r.certificate.is_complete());
    assert_eq!(r.operators.len(), 1);
    assert_eq!(r.operators[0].map(), &LinMap::unit_counit(&h, &h));
    let diff = verify_against_published(&r, &catalog::h4_published_tables(&h));
    assert!(diff.is_equal(), "{diff:?}");
    // the branch keeping g fixed dies on a linear inconsistency
    assert!(matches!(r.branches[0].status, BranchStatus::Empty(_)));
}

#[test]
fn kc2_has_two_operators() {
    let (h, r) = run("kC2", false);
    assert!(r.certificate.is_complete());
    assert_eq!(r.operators.len(), 2);
    assert!(r
        .operators
        .iter()
        .any(|d| d.map() == &LinMap::unit_counit(&h, &h)));
    assert!(r.operators.iter().any(|d| d.map() == &LinMap::identity(&h)));
}

#[test]
fn group_algebras_agree_with_brute_force() {
    for (name, group) in [("kC2", "C2"), ("kC2xC2", "C2xC2"), ("kC4", "C4")] {
        let (_, r) = run(name, false);
        assert!(r.certificate.is_complete());
        let g = catalog::group(group).unwrap();
        let expected = brute_force_group_diffops(&g);
        // coalgebra maps of a group algebra send group-likes to group-likes, so
        // each operator is a 0/1 matrix read off by columns
        let found: BTreeSet<Vec<usize>> = r
            .operators
            .iter()
            .map(|d| {
                images(d.map())
                    .iter()
                    .map(|v| {
                        let ones: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
                        assert_eq!(ones.len(), 1);
                        assert!(v[ones[0]].is_one());
                        ones[0]
                    })
                    .collect()
            })
            .collect();
        assert_eq!(found, expected, "{name}");
    }
}

#[test]
fn operators_are_verified_distinct_and_sorted() {
    for (name, bij) in [
        ("kC2xC2", false),
        ("H4", false),
        ("H8", true),
        ("kS3", false),
    ] {
        let (_, r) = run(name, bij);
        for d in &r.operators {
            assert!(check_diffop(d.map()).is_ok());
        }
        let keys: Vec<&[Rat]> = r
            .operators
            .iter()
            .map(|d| d.map().matrix().entries())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{name}");
    }
}

#[test]
fn h8_identity_branch_goes_through_sixteen_square_roots_of_one() {
    let (h, r) = run("H8", true);
    assert!(r.certificate.is_complete());
    let id = &r.branches[0];
    assert_eq!(id.restriction, vec![0, 1, 2, 3]);
    assert_eq!(id.ansatz, vec![Ansatz::GroupTimes]);
    let one = Rat::one();
    let zero = Rat::zero();
    assert_eq!(
        id.route,
        Route::GroupAlgebraQuadratic {
            q: vec![zero.clone(), zero.clone(), one.clone()],
            r: vec![one, zero.clone(), zero.clone(), zero],
        }
    );
    assert_eq!(id.intermediate, Some(16));
    assert_eq!(id.survivors, 4);
    let tables = catalog::h8_published_tables(&h);
    let diff = verify_against_published(&r, &tables);
    assert_eq!(diff.matched, ["D1", "D2", "D3", "D4"]);
    assert!(diff.unexpected.is_empty());
}

#[test]
fn h8_branches_through_xy_are_empty() {
    let (_, r) = run("H8", true);
    let xy = 3;
    for b in &r.branches {
        if b.restriction[1] == xy || b.restriction[2] == xy {
            assert_eq!(b.survivors, 0, "{:?}", b.restriction);
            assert!(!matches!(
                b.status,
                BranchStatus::Solved | BranchStatus::Residual(_)
            ));
        }
    }
    // all sixteen restrictions are visited, in the canonical order
    assert_eq!(r.branches.len(), 16);
}

#[test]
fn h8_swap_branch_has_no_rational_p() {
    let (_, r) = run("H8", true);
    let swap = r
        .branches
        .iter()
        .find(|b| b.restriction == [0, 2, 1, 3])
        .unwrap();
    assert!(
        matches!(swap.status, BranchStatus::Empty(_)),
        "{:?}",
        swap.status
    );
}

#[test]
fn h8_full_classification_is_complete() {
    let (h, r) = run("H8", false);
    assert!(r.certificate.is_complete());
    assert_eq!(r.operators.len(), 6);
    assert_eq!(r.operators.iter().filter(|d| d.is_bijective()).count(), 4);
    assert!(r
        .operators
        .iter()
        .any(|d| d.map() == &LinMap::unit_counit(&h, &h)));
    // the second non-bijective one sends G to 1 and z to xy
    let xy = h.basis_vec(3);
    assert!(r
        .operators
        .iter()
        .any(|d| !d.is_bijective() && (4..8).all(|i| d.map().image(i) == xy)));
}

#[test]
fn bijective_filter_prunes_only_colliding_restrictions() {
    let (_, r) = run("kS3", true);
    assert_eq!(r.operators.len(), 1);
    for b in &r.branches {
        let injective = b.restriction.iter().collect::<BTreeSet<_>>().len() == b.restriction.len();
        assert_eq!(matches!(b.status, BranchStatus::Pruned(_)), !injective);
    }
}

#[test]
fn perturbed_table_is_pinpointed() {
    let (h, r) = run("H8", true);
    let mut tables = catalog::h8_published_tables(&h);
    tables.truncate(4);
    let mut imgs = images(&tables[2].1);
    imgs[6][5] = &imgs[6][5] + &q(1, 3);
    tables[2].1 = LinMap::from_images(&h, &imgs).unwrap();
    let diff = verify_against_published(&r, &tables);
    assert!(!diff.is_equal());
    assert_eq!(diff.missing, ["D3"]);
    assert_eq!(diff.entries.len(), 1);
    let e = &diff.entries[0];
    assert_eq!((e.column, e.row), (6, 5));
    assert_eq!(&e.expected - &e.computed, q(1, 3));
}

#[test]
fn h4_perturbation_is_pinpointed() {
    let (h, r) = run("H4", false);
    let mut imgs = images(&LinMap::unit_counit(&h, &h));
    imgs[2][2] = Rat::one();
    let diff = verify_against_published(
        &r,
        &[("u∘ε".to_string(), LinMap::from_images(&h, &imgs).unwrap())],
    );
    assert_eq!(diff.unexpected, [0]);
    assert_eq!(diff.entries.len(), 1);
    assert_eq!((diff.entries[0].column, diff.entries[0].row), (2, 2));
}

/// `a·b` in `kA` through the group table.
fn group_mul(g: &FinGroup, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); g.order()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[g.mul(i, j)] += x * y;
        }
    }
    out
}

#[test]
fn square_roots_of_one_in_kc2xc2() {
    let g = catalog::c2xc2();
    let one: Vec<Rat> = (0..4)
        .map(|i| if i == 0 { Rat::one() } else { Rat::zero() })
        .collect();
    let s = solve_quadratic_in_group_algebra(&g, &[Rat::zero(), Rat::zero(), Rat::one()], &one)
        .unwrap();
    assert_eq!(s.solutions.len(), 16);
    let distinct: BTreeSet<Vec<Rat>> = s.solutions.iter().cloned().collect();
    assert_eq!(distinct.len(), 16);
    for p in &s.solutions {
        assert_eq!(group_mul(&g, p, p), one);
    }
    // ±g for the four group elements, plus the eight ½(±1±x±y±xy) with an odd number of minus signs
    let signed = s
        .solutions
        .iter()
        .filter(|p| p.iter().filter(|c| !c.is_zero()).count() == 1)
        .count();
    let halves: Vec<&Vec<Rat>> = s
        .solutions
        .iter()
        .filter(|p| p.iter().all(|c| c.abs() == q(1, 2)))
        .collect();
    assert_eq!(signed, 8);
    assert_eq!(halves.len(), 8);
    for p in halves {
        assert_eq!(p.iter().filter(|c| c.is_negative()).count() % 2, 1);
    }
}

#[test]
fn square_roots_in_kc2() {
    let g = FinGroup::cyclic(2, "g");
    let one = vec![Rat::one(), Rat::zero()];
    let s = solve_quadratic_in_group_algebra(&g, &[Rat::zero(), Rat::zero(), Rat::one()], &one)
        .unwrap();
    // a² + b² = 1 and 2ab = 0
    let expected: BTreeSet<Vec<Rat>> = [(1, 0), (-1, 0), (0, 1), (0, -1)]
        .iter()
        .map(|&(a, b)| vec![Rat::from_int(a), Rat::from_int(b)])
        .collect();
    assert_eq!(
        s.solutions.iter().cloned().collect::<BTreeSet<_>>(),
        expected
    );

    let minus_one = vec![-Rat::one(), Rat::zero()];
    let s =
        solve_quadratic_in_group_algebra(&g, &[Rat::zero(), Rat::zero(), Rat::one()], &minus_one)
            .unwrap();
    assert!(s.solutions.is_empty());
    assert_eq!(s.no_rational_solution, [0, 1]);
}

#[test]
fn quadratic_solver_rejects_other_groups_and_degrees() {
    let c4 = catalog::c4();
    let r = vec![Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()];
    assert!(matches!(
        solve_quadratic_in_group_algebra(&c4, &[Rat::zero(), Rat::one()], &r),
        Err(SolverError::NotExponentTwo(_))
    ));
    let g = catalog::c2xc2();
    let cubic = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::one()];
    assert!(matches!(
        solve_quadratic_in_group_algebra(&g, &cubic, &r),
        Err(SolverError::Degree(3))
    ));
}

#[test]
fn character_transform_round_trips() {
    let g = catalog::c2xc2();
    let chars = characters(&g).unwrap();
    let p = vec![q(1, 2), q(-3, 4), Rat::from_int(2), q(5, 7)];
    let t = character_transform(&chars, &p);
    assert_eq!(inverse_character_transform(&chars, &t), p);
    // multiplication becomes pointwise
    let p2 = group_mul(&g, &p, &p);
    let t2: Vec<Rat> = t.iter().map(|x| x * x).collect();
    assert_eq!(character_transform(&chars, &p2), t2);
}

#[test]
fn plan_rejects_broken_triangularity() {
    let h = arc("H4");
    let bad = vec![ScheduledGenerator {
        index: 2,
        support: vec![0, 2],
        ansatz: Ansatz::Free,
    }];
    assert!(matches!(
        SearchPlan::new(h.clone(), bad, None),
        Err(SolverError::Plan(_))
    ));
    let wrong_sigma = vec![ScheduledGenerator {
        index: 4,
        support: vec![4, 5, 6, 7],
        ansatz: Ansatz::GroupTimes,
    }];
    let h8 = arc("H8");
    assert!(matches!(
        SearchPlan::new(h8, wrong_sigma, Some(vec![0, 1, 2, 3])),
        Err(SolverError::Plan(_))
    ));
}

#[test]
fn group_times_ansatz_needs_cosemisimplicity() {
    let h = arc("H4");
    let plan = SearchPlan::new(
        h.clone(),
        vec![ScheduledGenerator {
            index: 2,
            support: vec![0, 1, 2],
            ansatz: Ansatz::GroupTimes,
        }],
        None,
    )
    .unwrap();
    assert!(plan.justify_group_times(0).is_err());
    let r = classify_diffops(&plan, false).unwrap();
    assert!(r.branches.iter().all(|b| b.ansatz == [Ansatz::Free]));
    assert_eq!(r.operators.len(), 1);
    let h8 = arc("H8");
    assert!(catalog::h8_plan(&h8).justify_group_times(0).is_ok());
}

#[test]
fn elimination_splits_on_rational_roots() {
    // x² = 1, y = x + 1
    let mut a = Poly::var(0).mul(&Poly::var(0));
    a.add_term(vec![], -Rat::one());
    let mut b = Poly::var(1);
    b.add_term(vec![0], -Rat::one());
    b.add_term(vec![], -Rat::one());
    let el = eliminate(&[a.clone(), b], 2);
    assert!(el.stuck.is_empty());
    let pts: BTreeSet<Vec<Rat>> = el.points.into_iter().collect();
    let expected: BTreeSet<Vec<Rat>> = [
        vec![Rat::one(), Rat::from_int(2)],
        vec![-Rat::one(), Rat::zero()],
    ]
    .into();
    assert_eq!(pts, expected);
    // x² = 2 has no rational point; x² = 1 alone leaves y free
    let mut irr = Poly::var(0).mul(&Poly::var(0));
    irr.add_term(vec![], -Rat::from_int(2));
    let el = eliminate(&[irr], 1);
    assert!(el.points.is_empty() && el.stuck.is_empty());
    let el = eliminate(&[a], 2);
    assert!(el.points.is_empty());
    assert!(!el.stuck.is_empty());
}
