use std::sync::Arc;

use hopfdiff::actions::{validate_action, ActionData};
use hopfdiff::catalog;
use hopfdiff::diffops::*;
use hopfdiff::exactlin::Rat;
use hopfdiff::groups::{endo_diffop_bijection, enumerate_endos, group_algebra, lift_map, FinGroup};
use hopfdiff::hopf::{FinDimHopf, LinMap};

fn arc(name: &str) -> Arc<FinDimHopf> {
    Arc::new(catalog::hopf(name).unwrap())
}

fn group_diffops(h: &Arc<FinDimHopf>, g: &Arc<FinGroup>) -> Vec<DiffOp> {
    endo_diffop_bijection(g)
        .unwrap()
        .into_iter()
        .map(|(_, d)| check_diffop(&lift_map(&d, h, h).unwrap()).unwrap())
        .collect()
}

#[test]
fn unit_counit_on_h4_is_a_non_bijective_diffop() {
    let h = arc("H4");
    let d = check_diffop(&LinMap::unit_counit(&h, &h)).unwrap();
    assert!(!d.is_bijective());
    assert!(check_diffop_prime(d.map()));
}

#[test]
fn identity_on_h4_fails_at_x_and_g() {
    let h = arc("H4");
    let id = LinMap::identity(&h);
    let (x, g) = (h.index_of("x").unwrap(), h.index_of("g").unwrap());
    match check_diffop(&id) {
        Err(DiffFailure::Identity(a, b)) => {
            assert!(
                [a, b].contains(&x) || [a, b].contains(&(x + 1)),
                "({a}, {b})"
            );
        }
        other => panic!("{other:?}"),
    }
    assert!(!check_diffop_prime(&id));
    // D(xg) vs D(x₁)x₂D(g)S(x₃) by hand: xg = −gx; right side gives x·g·... ≠ −gx
    let lhs = id.apply(&h.mul(&h.basis_vec(x), &h.basis_vec(g)));
    assert_eq!(h.format(&lhs), "-gx");
}

#[test]
fn first_published_h8_operator_verifies() {
    let h = arc("H8");
    let tables = catalog::h8_published_tables(&h);
    let d1 = check_diffop(&tables[0].1).unwrap();
    assert!(d1.is_bijective());
    assert!(check_diffop_prime(d1.map()));
    let f = diff_to_endo(d1.map()).unwrap();
    assert!(f.is_algebra_hom());
}

#[test]
fn unit_counit_maps_to_identity() {
    for name in ["kC2", "kS3", "H4", "H8"] {
        let h = arc(name);
        let f = diff_to_endo(&LinMap::unit_counit(&h, &h)).unwrap();
        assert_eq!(f, LinMap::identity(&h), "{name}");
    }
}

#[test]
fn identity_on_kc2_transports_to_trivial_endo() {
    let h = arc("kC2");
    let f = diff_to_endo(&LinMap::identity(&h)).unwrap();
    assert_eq!(f.image(1), h.one());
    assert_eq!(endo_to_diff(&f).unwrap(), LinMap::identity(&h));
}

#[test]
fn star_on_kc2() {
    let h = arc("kC2");
    let id = check_diffop(&LinMap::identity(&h)).unwrap();
    let ue = check_diffop(&LinMap::unit_counit(&h, &h)).unwrap();
    assert_eq!(star(&id, &id).unwrap().map(), id.map());
    assert_eq!(star(&id, &ue).unwrap().map(), id.map());
    assert_eq!(star(&ue, &id).unwrap().map(), id.map());
}

#[test]
fn star_requires_cocommutativity() {
    let h = arc("H8");
    let d = check_diffop(&catalog::h8_published_tables(&h)[0].1).unwrap();
    assert!(matches!(star(&d, &d), Err(DiffError::NotCocommutative(_))));
}

#[test]
fn star_on_ks3_transports_to_composition() {
    let g = Arc::new(catalog::s3());
    let h = Arc::new(group_algebra(&g));
    let pairs = endo_diffop_bijection(&g).unwrap();
    assert_eq!(pairs.len(), 10);
    let ops: Vec<DiffOp> = pairs
        .iter()
        .map(|(_, d)| check_diffop(&lift_map(d, &h, &h).unwrap()).unwrap())
        .collect();
    for (i, a) in ops.iter().enumerate() {
        for (j, b) in ops.iter().enumerate() {
            let ab = star(a, b).unwrap();
            let f = pairs[i].0.compose(&pairs[j].0);
            assert_eq!(
                diff_to_endo(ab.map()).unwrap(),
                lift_map(&f, &h, &h).unwrap()
            );
        }
    }
}

#[test]
fn conjugating_d1_by_swap_lands_in_published_set() {
    let h = arc("H8");
    let tables = catalog::h8_published_tables(&h);
    let sigma = catalog::h8_swap_automorphism(&h);
    let d1 = check_diffop(&tables[0].1).unwrap();
    let c = conjugate(&sigma, &d1).unwrap();
    assert!(tables.iter().any(|(_, t)| t == c.map()));
    assert_eq!(
        conjugate(&LinMap::identity(&h), &d1).unwrap().map(),
        d1.map()
    );
}

#[test]
fn inner_conjugation_permutes_ks3_diffops() {
    let g = Arc::new(catalog::s3());
    let h = Arc::new(group_algebra(&g));
    let ops = group_diffops(&h, &g);
    let t = g.index_of("(12)").unwrap();
    let images: Vec<Vec<Rat>> = (0..6)
        .map(|a| h.basis_vec(g.mul(g.mul(t, a), g.inv(t))))
        .collect();
    let sigma = LinMap::from_images(&h, &images).unwrap();
    let mut hit = vec![false; ops.len()];
    for d in &ops {
        let c = conjugate(&sigma, d).unwrap();
        let k = ops.iter().position(|e| e.map() == c.map()).unwrap();
        hit[k] = true;
    }
    assert!(hit.iter().all(|&b| b));
}

#[test]
fn rota_baxter_examples() {
    let h = arc("kC2");
    let id = check_diffop(&LinMap::identity(&h)).unwrap();
    let rb = rota_baxter_inverse(&id).unwrap();
    assert_eq!(rb.operator, LinMap::identity(&h));
    let ue = check_diffop(&LinMap::unit_counit(&h, &h)).unwrap();
    assert!(matches!(rota_baxter_inverse(&ue), Err(DiffError::Singular)));
}

#[test]
fn bijective_ks3_diffops_invert_to_rota_baxter() {
    let g = Arc::new(catalog::s3());
    let h = Arc::new(group_algebra(&g));
    let pairs = endo_diffop_bijection(&g).unwrap();
    let ops = group_diffops(&h, &g);
    // D(g) = F(g)g⁻¹ vanishes on the fixed points of F, so only F = trivial gives a bijection.
    let bij: Vec<usize> = (0..ops.len()).filter(|&i| ops[i].is_bijective()).collect();
    assert_eq!(bij.len(), 1);
    let f = &pairs[bij[0]].0;
    assert!((0..6).all(|a| f.apply(a) == g.identity()));
    assert_eq!(ops[bij[0]].map(), &LinMap::antipode(&h));
    for &i in &bij {
        let rb = rota_baxter_inverse(&ops[i]).unwrap();
        assert_eq!(rb.round_trip.map(), ops[i].map());
    }
    for (i, (f, _)) in pairs.iter().enumerate() {
        if f.is_bijective() {
            assert!(matches!(
                rota_baxter_inverse(&ops[i]),
                Err(DiffError::Singular)
            ));
        }
    }
}

fn inversion_setup() -> (ActionData, Arc<FinDimHopf>, Arc<FinDimHopf>) {
    let a = catalog::inversion_action();
    let (k, h) = (a.acting().clone(), a.target().clone());
    (a, k, h)
}

#[test]
fn module_bialgebra_checks() {
    let (a, k, h) = inversion_setup();
    let dh = check_diffop(&LinMap::identity(&h)).unwrap();
    let dk = check_diffop(&LinMap::identity(&k)).unwrap();
    assert!(check_diff_module_bialgebra(&dh, &dk, &a).is_ok());
    let ue = check_diffop(&LinMap::unit_counit(&h, &h)).unwrap();
    match check_diff_module_bialgebra(&ue, &dk, &a) {
        Err(DiffError::IdentityFails(w)) => {
            assert_eq!(w, vec![k.index_of("s").unwrap(), h.index_of("r").unwrap()]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn adjoint_module_bialgebra_over_itself() {
    let g = Arc::new(catalog::s3());
    let h = Arc::new(group_algebra(&g));
    let a = ActionData::adjoint(&h);
    assert!(validate_action(&a, true).passes());
    for d in group_diffops(&h, &g) {
        assert!(check_diff_module_bialgebra(&d, &d, &a).is_ok());
    }
}

#[test]
fn smash_extension_of_inversion_pair() {
    let (a, k, h) = inversion_setup();
    let dh = check_diffop(&LinMap::identity(&h)).unwrap();
    let dk = check_diffop(&LinMap::identity(&k)).unwrap();
    let m = check_diff_module_bialgebra(&dh, &dk, &a).unwrap();
    let ext = extend_diff_smash(&m).unwrap();
    let sm = &ext.smash;
    assert_eq!(sm.dim(), 8);
    let s = k.index_of("s").unwrap();
    let one_k = k.index_of("1").unwrap();
    for r in 0..4 {
        let expect = sm.basis_vec(((3 * r) % 4) * 2 + s);
        assert_eq!(ext.op.map().image(r * 2 + s), expect);
        assert_eq!(
            ext.op.map().image(r * 2 + one_k),
            sm.basis_vec(r * 2 + one_k)
        );
    }
}

#[test]
fn smash_extension_trivial_action_is_tensor_product() {
    let kc2 = arc("kC2");
    let kc4 = arc("kC4");
    let a = ActionData::trivial(&kc2, &kc4);
    let g4 = Arc::new(catalog::c4());
    let g2 = Arc::new(catalog::c2());
    for dh in group_diffops(&kc4, &g4) {
        for dk in group_diffops(&kc2, &g2) {
            let m = check_diff_module_bialgebra(&dh, &dk, &a).unwrap();
            let ext = extend_diff_smash(&m).unwrap();
            for x in 0..4 {
                for b in 0..2 {
                    let want: Vec<Rat> = dh
                        .map()
                        .image(x)
                        .iter()
                        .flat_map(|p| dk.map().image(b).into_iter().map(move |q| p * &q))
                        .collect();
                    assert_eq!(ext.op.map().image(x * 2 + b), want);
                }
            }
        }
    }
    let ue4 = check_diffop(&LinMap::unit_counit(&kc4, &kc4)).unwrap();
    let ue2 = check_diffop(&LinMap::unit_counit(&kc2, &kc2)).unwrap();
    let ext = extend_diff_smash(&check_diff_module_bialgebra(&ue4, &ue2, &a).unwrap()).unwrap();
    assert_eq!(ext.op.map(), &LinMap::unit_counit(&ext.smash, &ext.smash));
}

#[test]
fn ckmm_on_ks3_and_kc2_smash_kc2() {
    let g = Arc::new(catalog::s3());
    let h = Arc::new(group_algebra(&g));
    for d in group_diffops(&h, &g) {
        let rep = ckmm_instance_check(&d).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.group_order, 6);
    }
    let kc2 = arc("kC2");
    let a = ActionData::trivial(&kc2, &kc2);
    let sm = Arc::new(hopfdiff::actions::smash_product(&a).unwrap());
    // id ⊗ u∘ε
    let images: Vec<Vec<Rat>> = (0..4).map(|p| sm.basis_vec((p / 2) * 2)).collect();
    let d = check_diffop(&LinMap::from_images(&sm, &images).unwrap()).unwrap();
    let rep = ckmm_instance_check(&d).unwrap();
    assert!(rep.holds());
}

#[test]
fn ckmm_rejects_h4() {
    let h = arc("H4");
    let d = check_diffop(&LinMap::unit_counit(&h, &h)).unwrap();
    assert!(matches!(
        ckmm_instance_check(&d),
        Err(DiffError::NotCocommutative(_))
    ));
}

#[test]
fn endo_counts_match_lifted_diffops() {
    for (name, n) in [("C2", 2), ("C2xC2", 16), ("S3", 10)] {
        let g = Arc::new(catalog::group(name).unwrap());
        assert_eq!(enumerate_endos(&g).unwrap().len(), n);
        let h = Arc::new(group_algebra(&g));
        assert_eq!(group_diffops(&h, &g).len(), n);
    }
}
