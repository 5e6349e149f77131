mod common;

use common::c;
use knot_slope::data;
use knot_slope::presentation::Word;
use knot_slope::representation::{boundary_data_on, evaluate_word, riley_family, EigenBranch, Representation};
use num_complex::Complex64;

#[test]
fn evaluation_is_homomorphism() {
    let mut rng = common::rng(21);
    let pres = data::figure_eight();
    for _ in 0..300 {
        let images = vec![common::random_sl2(&mut rng, 3.0), common::random_sl2(&mut rng, 3.0)];
        // a free representation: skip the relator check
        let rep = Representation::with_tol(pres.clone(), images, f64::INFINITY).unwrap();
        let w1 = common::random_word(&mut rng, 2, 10);
        let w2 = common::random_word(&mut rng, 2, 10);
        let lhs = evaluate_word(&rep, &w1.concat(&w2));
        let rhs = evaluate_word(&rep, &w1).mul(&evaluate_word(&rep, &w2));
        let scale = evaluate_word(&rep, &w1).matrix().norm() * evaluate_word(&rep, &w2).matrix().norm();
        assert!(lhs.max_abs_diff(&rhs) <= 1e-9 * scale.max(1.0));
    }
}

#[test]
fn boundary_branches_are_sigma_related() {
    for pres in [data::trefoil(), data::figure_eight()] {
        for m in common::arc(10, 1.1, 2.0, 0.1, 1.0) {
            for r in riley_family(&pres, m, 1e-8).unwrap() {
                let a = boundary_data_on(&r.rep, 1e-8, EigenBranch::Preferred).unwrap();
                let b = boundary_data_on(&r.rep, 1e-8, EigenBranch::Other).unwrap();
                assert!((b.m - a.m.inv()).norm() <= 1e-9 * a.m.norm().max(1.0));
                assert!((b.l - a.l.inv()).norm() <= 1e-9 * a.l.norm().max(a.l.inv().norm()));
            }
        }
    }
}

#[test]
fn riley_roots_satisfy_relators() {
    for pres in [data::trefoil(), data::figure_eight()] {
        for m in common::arc(25, 1.1, 2.0, 0.1, 1.0) {
            let family = riley_family(&pres, m, 1e-8).unwrap();
            assert!(!family.is_empty());
            for r in family {
                assert!(r.rep.max_relator_residual() <= 1e-8);
            }
        }
    }
}

#[test]
fn riley_roots_move_continuously() {
    let pres = data::figure_eight();
    let step = 1e-3;
    let mut prev: Vec<Complex64> = riley_family(&pres, c(1.3, 0.2), 1e-8).unwrap().iter().map(|r| r.t).collect();
    for k in 1..=200 {
        let m = c(1.3 + k as f64 * step, 0.2);
        let next: Vec<Complex64> = riley_family(&pres, m, 1e-8).unwrap().iter().map(|r| r.t).collect();
        assert_eq!(next.len(), prev.len());
        for t in &prev {
            let d = next.iter().map(|s| (s - t).norm()).fold(f64::INFINITY, f64::min);
            assert!(d < 0.1, "jump {d} at step {k}");
        }
        prev = next;
    }
}

#[test]
fn reducible_flag_matches_commutator_trace() {
    for pres in [data::trefoil(), data::figure_eight()] {
        // M = 1 + small and M on the unit circle include the reducible root t = 0 collisions
        let mut samples = common::arc(15, 1.1, 2.0, 0.1, 1.0);
        samples.extend([c(1.0, 0.0), c(-1.0, 0.0), Complex64::from_polar(1.0, 0.7)]);
        for m in samples {
            for r in riley_family(&pres, m, 1e-8).unwrap() {
                let comm = Word::commutator(&Word::generator(0), &Word::generator(1));
                let tr = evaluate_word(&r.rep, &comm).trace();
                assert_eq!((tr - 2.0).norm() <= 1e-8, r.reducible, "M = {m}, t = {}", r.t);
            }
        }
    }
}
