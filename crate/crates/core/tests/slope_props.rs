mod common;

use std::sync::Arc;

use common::c;
use knot_slope::data;
use knot_slope::linalg::Sl2;
use knot_slope::presentation::KnotPresentation;
use knot_slope::representation::{
    abelian_rep, boundary_data_on, conjugate_rep, invariant_vector, is_unitary, parabolic_modulus, riley_family,
    unitarize, EigenBranch, RileyRep,
};
use knot_slope::slope::{
    augment, build_twisted_alexander, compute_slope, slope_from_matrix, slope_of_character, SlopeConfig, SlopeError,
};
use nalgebra::Matrix2;
use num_complex::Complex64;

fn reading(r: &knot_slope::representation::Representation) -> Complex64 {
    compute_slope(r, &SlopeConfig::default()).unwrap().reading.finite().unwrap()
}

fn samples(pres: &Arc<KnotPresentation>, n: usize) -> Vec<RileyRep> {
    common::arc(n, 1.1, 2.0, 0.1, 1.0)
        .into_iter()
        .flat_map(|m| riley_family(pres, m, 1e-8).unwrap())
        .filter(|r| !r.reducible)
        .collect()
}

fn figure_eight_formula(m: Complex64) -> Complex64 {
    let x = m + m.inv();
    let x2 = x * x;
    4.0 * (2.0 * x2 - 5.0).powi(2) / ((x2 - 5.0) * (x2 - 1.0))
}

#[test]
fn trefoil_is_constant() {
    let readings: Vec<Complex64> = samples(&data::trefoil(), 25).iter().map(|r| reading(&r.rep)).collect();
    assert_eq!(readings.len(), 25);
    let var = readings.iter().map(|s| (s + 6.0).norm_sqr()).sum::<f64>() / readings.len() as f64;
    assert!(var <= 1e-14, "variance {var}");
    assert!(readings.iter().all(|s| (s + 6.0).norm() <= 1e-8));
}

#[test]
fn figure_eight_squared_formula() {
    let pres = data::figure_eight();
    let mut count = 0;
    for m in common::arc(20, 1.1, 2.0, 0.1, 1.0) {
        let fam = riley_family(&pres, m, 1e-8).unwrap();
        let slopes: Vec<Complex64> = fam.iter().filter(|r| !r.reducible).map(|r| reading(&r.rep)).collect();
        assert_eq!(slopes.len(), 2);
        for s in &slopes {
            assert!(common::rel_dev(s * s, figure_eight_formula(m)) <= 1e-6);
            count += 1;
        }
        // the two Galois-conjugate roots carry opposite signs
        assert!((slopes[0] + slopes[1]).norm() <= 1e-6 * slopes[0].norm());
    }
    assert_eq!(count, 40);
}

#[test]
fn figure_eight_sign_is_consistent_along_a_branch() {
    let pres = data::figure_eight();
    let path = common::arc(40, 1.1, 2.0, 0.1, 1.0);
    let first = riley_family(&pres, path[0], 1e-8).unwrap();
    let mut t = first[0].t;
    let mut prev = reading(&first[0].rep);
    for &m in &path[1..] {
        let fam = riley_family(&pres, m, 1e-8).unwrap();
        let next = fam.iter().min_by(|a, b| (a.t - t).norm().total_cmp(&(b.t - t).norm())).unwrap();
        let s = reading(&next.rep);
        // same sign of the square root: closer to the previous value than to its negative
        assert!((s - prev).norm() < (s + prev).norm());
        t = next.t;
        prev = s;
    }
}

#[test]
fn abelian_slope_vanishes() {
    for pres in [data::trefoil(), data::figure_eight()] {
        for lambda in [c(2.0, 0.0), c(3.0, 0.0), c(1.0, 1.0)] {
            let rep = abelian_rep(pres.clone(), lambda).unwrap();
            assert!(reading(&rep).norm() <= 1e-10);
        }
    }
}

#[test]
fn conjugation_invariance() {
    let mut rng = common::rng(31);
    let cases: Vec<RileyRep> = [data::trefoil(), data::figure_eight()].iter().flat_map(|p| samples(p, 5)).collect();
    for k in 0..50 {
        let r = &cases[k % cases.len()];
        let p = common::random_sl2(&mut rng, 5.0);
        let conj = conjugate_rep(&r.rep, p.matrix()).unwrap();
        let (a, b) = (reading(&r.rep), reading(&conj));
        assert!((a - b).norm() <= 1e-7 * a.norm().max(1.0), "{a} vs {b}");
    }
}

#[test]
fn normalization_invariance() {
    let cfg = SlopeConfig::default();
    for r in samples(&data::figure_eight(), 5) {
        let aug = augment(r.rep.presentation()).unwrap();
        let t = build_twisted_alexander(&aug, &r.rep);
        let v = invariant_vector(&r.rep, cfg.rank_tol).unwrap().v;
        let (base, _) = slope_from_matrix(&t, &v, &cfg).unwrap();
        for scale in [c(1e-3, 0.0), c(-2.0, 5.0), c(0.0, 40.0)] {
            let scaled = v.map(|z| z * scale);
            let (s, _) = slope_from_matrix(&t, &scaled, &cfg).unwrap();
            let (a, b) = (base.reading.finite().unwrap(), s.reading.finite().unwrap());
            assert!((a - b).norm() <= 1e-10 * a.norm().max(1.0));
        }
    }
}

#[test]
fn sigma_invariance() {
    // the representation conjugated so that the meridian's other eigenvector
    // comes first realizes (L^-1, M^-1)
    for pres in [data::trefoil(), data::figure_eight()] {
        for r in samples(&pres, 5) {
            let bd = boundary_data_on(&r.rep, 1e-8, EigenBranch::Other).unwrap();
            let e = bd.eigvec;
            let other = boundary_data_on(&r.rep, 1e-8, EigenBranch::Preferred).unwrap().eigvec;
            let p = Sl2::normalized(Matrix2::new(e[0], other[0], e[1], other[1])).unwrap();
            let swapped = conjugate_rep(&r.rep, &p.inverse().matrix().clone()).unwrap();
            let m = swapped.meridian_image();
            assert!((m.get(0, 0) - bd.m).norm() <= 1e-8 * bd.m.norm().max(1.0));
            let (a, b) = (reading(&r.rep), reading(&swapped));
            assert!((a - b).norm() <= 1e-7 * a.norm().max(1.0));
        }
    }
}

#[test]
fn unitary_roots_give_real_slopes() {
    let pres = data::figure_eight();
    let mut seen = 0;
    for theta in [1.2, 1.5, 1.8] {
        for r in riley_family(&pres, Complex64::from_polar(1.0, theta), 1e-8).unwrap() {
            if r.reducible {
                continue;
            }
            if let Some(u) = unitarize(&r.rep, 1e-8) {
                assert!(is_unitary(&u, 1e-8));
                let s = reading(&u);
                assert!(s.im.abs() <= 1e-7, "theta {theta}: {s}");
                assert!((s - reading(&r.rep)).norm() <= 1e-7 * s.norm().max(1.0));
                seen += 1;
            }
        }
    }
    assert!(seen >= 3, "only {seen} unitary roots");
}

#[test]
fn parabolic_limit() {
    let pres = data::figure_eight();
    let near = riley_family(&pres, c(1.0 + 1e-3, 0.0), 1e-8).unwrap();
    for r in riley_family(&pres, c(1.0, 0.0), 1e-8).unwrap() {
        let tau = parabolic_modulus(&r.rep).unwrap();
        let close = near.iter().min_by(|a, b| (a.t - r.t).norm().total_cmp(&(b.t - r.t).norm())).unwrap();
        let s = reading(&close.rep);
        assert!((tau - s).norm() <= 1e-2, "tau {tau} vs slope {s}");
    }
}

#[test]
fn parabolic_reps_read_the_modulus() {
    let pres = data::figure_eight();
    let cfg = SlopeConfig::default();
    for r in riley_family(&pres, c(1.0, 0.0), 1e-8).unwrap() {
        let direct = compute_slope(&r.rep, &cfg);
        assert!(matches!(direct, Err(SlopeError::BoundaryParabolic)), "{direct:?}");
        let tau = parabolic_modulus(&r.rep).unwrap();
        let s = slope_of_character(&r.rep, &cfg).unwrap().reading.finite().unwrap();
        assert!((s - tau).norm() <= 1e-14 * tau.norm());
    }
}
