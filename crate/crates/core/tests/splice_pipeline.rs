use spliceknot::splice::rt_set;
use spliceknot::Tolerances;

#[test]
fn trefoil_rt_set_is_four() {
    let r = rt_set(1, 1, &Tolerances::default(), 3).unwrap();
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["rt_set"], serde_json::json!([[4.0, 0.0]]));
    assert_eq!(json["criterion"]["route"], "slopes");
    assert_eq!(json["convention"], "wada-fox-dy-over-x-minus-1");
}

#[test]
fn figure_eight_rt_set_is_small_and_finite() {
    let r = rt_set(-1, -1, &Tolerances::default(), 3).unwrap();
    assert!(!r.rt_set.is_empty() && r.rt_set.len() <= 15);
    assert!(r.criterion.coprime);
}

#[test]
fn character_invariants() {
    for (q1, q2) in [(1, 1), (1, -1), (-1, -1)] {
        let r = rt_set(q1, q2, &Tolerances::default(), 3).unwrap();
        for c in &r.characters {
            // irreducible restrictions on both sides
            assert!(c.t1.norm() > 1e-10 && c.t2.norm() > 1e-10);
            // rank verdict against the parabolic trace test
            assert_eq!(c.acyclic_on_torus, !c.parabolic);
            assert!(c.residual <= 1e-8);
        }
        assert!(r.spurious.iter().all(|s| (s.xi + 2.0).norm() < 1e-9));
    }
}

#[test]
fn swapping_the_pair_keeps_the_rt_set() {
    let a = rt_set(1, -1, &Tolerances::default(), 3).unwrap();
    let b = rt_set(-1, 1, &Tolerances::default(), 3).unwrap();
    assert_eq!(a.rt_set.len(), b.rt_set.len());
    for z in &a.rt_set {
        assert!(b.rt_set.iter().any(|w| (z - w).norm() < 1e-7));
    }
}

#[test]
fn reports_are_reproducible() {
    let run = || serde_json::to_string(&rt_set(-1, -1, &Tolerances::default(), 11).unwrap()).unwrap();
    assert_eq!(run(), run());
}

#[test]
fn invalid_tolerance_rejected() {
    let tol = Tolerances {
        dedup: 0.0,
        ..Tolerances::default()
    };
    assert!(rt_set(1, 1, &tol, 0).is_err());
}
