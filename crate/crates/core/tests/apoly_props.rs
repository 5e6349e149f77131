mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use knot_slope::apoly::{
    compute_apoly_twobridge, ideal_point_slopes, log_gauss, newton_polygon, parse_bilaurent, resultant_t, side_slopes,
    ApolyError, BiLaurent, SideSlope, UniPolyOverField, Var,
};
use knot_slope::data;
use knot_slope::representation::{boundary_data, riley_family};
use knot_slope::slope::{compute_slope, SlopeConfig};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn figure_eight_apoly() -> &'static BiLaurent {
    static A: OnceLock<BiLaurent> = OnceLock::new();
    A.get_or_init(|| compute_apoly_twobridge(&data::figure_eight(), false).unwrap().polynomial)
}

fn random_bilaurent(rng: &mut ChaCha8Rng, terms: usize, lo: i64, hi: i64) -> BiLaurent {
    let mut out = BiLaurent::zero();
    while out.is_zero() {
        let picks: Vec<(i64, i64, i64)> = (0..terms)
            .map(|_| (rng.random_range(lo..=hi), rng.random_range(lo..=hi), rng.random_range(-3..=3)))
            .collect();
        out = BiLaurent::from_int_terms(&picks);
    }
    out
}

fn random_unipoly(rng: &mut ChaCha8Rng, degree: usize) -> UniPolyOverField {
    let mut coeffs: Vec<BiLaurent> = (0..degree)
        .map(|_| if rng.random_bool(0.2) { BiLaurent::zero() } else { random_bilaurent(rng, 2, 0, 2) })
        .collect();
    coeffs.push(random_bilaurent(rng, 2, 0, 2));
    UniPolyOverField::new(coeffs)
}

/// Side directions found by brute force: `(p, q)` is a side when every
/// support point lies weakly to the left of `p -> q`, with `p`, `q` the
/// extreme points on that line.
fn brute_force_side_slopes(a: &BiLaurent) -> BTreeSet<String> {
    let pts: Vec<(i64, i64)> = a.support().collect();
    let cross = |o: (i64, i64), p: (i64, i64), q: (i64, i64)| (p.0 - o.0) * (q.1 - o.1) - (p.1 - o.1) * (q.0 - o.0);
    let mut out = BTreeSet::new();
    for &p in &pts {
        for &q in &pts {
            if p == q || !pts.iter().all(|&r| cross(p, q, r) >= 0) {
                continue;
            }
            let slope = if q.0 == p.0 {
                SideSlope::Infinite
            } else {
                SideSlope::Finite(num_rational::BigRational::new((q.1 - p.1).into(), (q.0 - p.0).into()))
            };
            out.insert(slope.to_string());
        }
    }
    out
}

fn slope_set(a: &BiLaurent) -> BTreeSet<String> {
    side_slopes(&newton_polygon(a).unwrap()).unwrap().iter().map(|s| s.to_string()).collect()
}

#[test]
fn figure_eight_polynomial() {
    let expected = parse_bilaurent("L^2*M^4 + L*(-M^8 + M^6 + 2*M^4 + M^2 - 1) + M^4").unwrap();
    assert_eq!(*figure_eight_apoly(), expected.canonical());
}

#[test]
fn figure_eight_hull_matches_brute_force() {
    let a = figure_eight_apoly();
    let polygon = newton_polygon(a).unwrap();
    for p in a.support() {
        assert!(polygon.contains(p));
    }
    assert_eq!(slope_set(a), brute_force_side_slopes(a));
    let report = ideal_point_slopes(a).unwrap();
    assert!(report.contains_ideal(&SideSlope::from_integer(4)));
    assert!(report.contains_ideal(&SideSlope::from_integer(-4)));
}

#[test]
fn random_hulls_contain_support() {
    let mut rng = common::rng(41);
    for _ in 0..200 {
        let a = random_bilaurent(&mut rng, 8, -3, 3).canonical();
        let polygon = newton_polygon(&a).unwrap();
        assert_eq!(polygon.min_corner(), Some((0, 0)));
        for p in a.support() {
            assert!(polygon.contains(p));
        }
        for v in &polygon.vertices {
            assert!(a.support().any(|p| p == *v));
        }
        if !a.is_monomial() {
            assert_eq!(slope_set(&a), brute_force_side_slopes(&a));
        }
    }
}

#[test]
fn sigma_symmetrized_hull_has_same_slopes() {
    let mut rng = common::rng(42);
    let mut cases = vec![figure_eight_apoly().clone(), parse_bilaurent("1 + L*M^6").unwrap()];
    cases.extend((0..50).map(|_| random_bilaurent(&mut rng, 6, -2, 2)).filter(|a| !a.is_monomial()));
    for a in cases {
        let (sym, _) = (&a * &a.invert_variables()).to_polynomial();
        assert_eq!(slope_set(&sym), slope_set(&a));
    }
}

#[test]
fn resultant_is_multiplicative() {
    let mut rng = common::rng(43);
    let mut checked = 0;
    while checked < 100 {
        let dp = rng.random_range(1..=2);
        let p = random_unipoly(&mut rng, dp);
        let dq = rng.random_range(1..=2);
        let q = random_unipoly(&mut rng, dq);
        let dr = rng.random_range(1..=2);
        let r = random_unipoly(&mut rng, dr);
        let (Ok(pr), Ok(qr)) = (resultant_t(&p, &r), resultant_t(&q, &r)) else { continue };
        assert_eq!(resultant_t(&(&p * &q), &r).unwrap(), &pr * &qr);
        checked += 1;
    }
}

#[test]
fn resultant_vanishes_on_common_factor() {
    let mut rng = common::rng(44);
    for _ in 0..30 {
        let f = random_unipoly(&mut rng, 1);
        let g = random_unipoly(&mut rng, 1);
        let h = random_unipoly(&mut rng, 1);
        assert_eq!(resultant_t(&(&f * &g), &(&f * &h)), Err(ApolyError::ZeroResultant));
    }
    let t = UniPolyOverField::t();
    let lm = UniPolyOverField::constant(BiLaurent::unit(1, 1));
    let one = UniPolyOverField::constant(BiLaurent::one());
    let r = resultant_t(&(&(&t * &t) - &lm), &(&t - &one)).unwrap();
    assert_eq!(r, parse_bilaurent("1 - L*M").unwrap());
}

#[test]
fn derivatives_commute() {
    let mut rng = common::rng(45);
    for _ in 0..200 {
        let a = random_bilaurent(&mut rng, 6, -3, 3);
        assert_eq!(a.derivative(Var::L).derivative(Var::M), a.derivative(Var::M).derivative(Var::L));
    }
}

#[test]
fn text_and_json_round_trip() {
    let mut rng = common::rng(46);
    for _ in 0..200 {
        let a = random_bilaurent(&mut rng, 5, -4, 4);
        assert_eq!(parse_bilaurent(&a.to_string()).unwrap(), a);
        assert_eq!(BiLaurent::from_json(&a.to_json()).unwrap(), a);
    }
}

/// Roots in `L` of the figure-eight polynomial, quadratic in `L`, at `M`.
fn figure_eight_points(m: Complex64) -> [Complex64; 2] {
    let a = figure_eight_apoly();
    let cl = |k: i64| a.coeff_l(k).eval(Complex64::new(1.0, 0.0), m);
    let (c2, c1, c0) = (cl(2), cl(1), cl(0));
    let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
    [(-c1 + disc) / (2.0 * c2), (-c1 - disc) / (2.0 * c2)]
}

#[test]
fn log_gauss_ignores_monomial_factors() {
    let a = figure_eight_apoly();
    for m in common::arc(10, 1.1, 2.0, 0.1, 1.0) {
        for l in figure_eight_points(m) {
            assert!(a.eval(l, m).norm() <= 1e-10 * a.magnitude_at(l, m));
            let base = log_gauss(a, l, m).unwrap().finite().unwrap();
            for i in -2..=2 {
                for j in -2..=2 {
                    let scaled = &BiLaurent::unit(i, j) * a;
                    let s = log_gauss(&scaled, l, m).unwrap().finite().unwrap();
                    assert!((s - base).norm() <= 1e-8 * base.norm().max(1.0));
                }
            }
        }
    }
}

#[test]
fn riley_samples_lie_on_the_curve() {
    let a = figure_eight_apoly();
    let pres = data::figure_eight();
    for m in common::arc(20, 1.1, 2.0, 0.1, 1.0) {
        for r in riley_family(&pres, m, 1e-8).unwrap() {
            let bd = boundary_data(&r.rep, 1e-8).unwrap();
            assert!(a.eval(bd.l, bd.m).norm() <= 1e-6 * a.magnitude_at(bd.l, bd.m));
        }
    }
}

#[test]
fn both_routes_agree_on_the_figure_eight() {
    let a = figure_eight_apoly();
    let pres = data::figure_eight();
    let cfg = SlopeConfig::default();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for m in common::arc(20, 1.1, 2.0, 0.1, 1.0) {
        for r in riley_family(&pres, m, 1e-8).unwrap().into_iter().filter(|r| !r.reducible) {
            let bd = boundary_data(&r.rep, 1e-8).unwrap();
            let fox = compute_slope(&r.rep, &cfg).unwrap().reading.finite().unwrap();
            let gauss = log_gauss(a, bd.l, bd.m).unwrap().finite().unwrap();
            worst = worst.max(common::rel_dev(fox, gauss));
            count += 1;
        }
    }
    assert!(count >= 20);
    assert!(worst <= 1e-6, "worst relative deviation {worst}");
}

#[test]
fn both_routes_agree_on_the_trefoil() {
    let a = compute_apoly_twobridge(&data::trefoil(), false).unwrap().polynomial;
    let pres = data::trefoil();
    for m in common::arc(10, 1.1, 2.0, 0.1, 1.0) {
        for r in riley_family(&pres, m, 1e-8).unwrap() {
            let bd = boundary_data(&r.rep, 1e-8).unwrap();
            let gauss = log_gauss(&a, bd.l, bd.m).unwrap().finite().unwrap();
            let fox = compute_slope(&r.rep, &SlopeConfig::default()).unwrap().reading.finite().unwrap();
            assert!((gauss - fox).norm() <= 1e-10);
        }
    }
}
