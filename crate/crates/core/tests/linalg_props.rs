mod common;

use knot_slope::linalg::{adjoint_of, killing_gram, nullspace, rank_with_tol, subspace_intersection, CMatrix};
use num_complex::Complex64;
use rand::Rng;

#[test]
fn adjoint_is_homomorphism_preserving_killing_form() {
    let mut rng = common::rng(1);
    let g = killing_gram();
    for _ in 0..500 {
        let a = common::random_sl2(&mut rng, 10.0);
        let b = common::random_sl2(&mut rng, 10.0);
        let (ad_a, ad_b) = (adjoint_of(&a), adjoint_of(&b));
        let ad_ab = adjoint_of(&a.mul(&b));
        let scale = ad_a.matrix().norm() * ad_b.matrix().norm();
        assert!((ad_ab.matrix() - ad_a.mul(&ad_b).matrix()).norm() <= 1e-12 * scale);
        for ad in [&ad_a, &ad_b] {
            let defect = ad.matrix().transpose() * g * ad.matrix() - g;
            let rel = defect.iter().map(|z| z.norm()).fold(0.0, f64::max) / ad.matrix().norm_squared().max(1.0);
            assert!(rel <= 1e-9, "Killing defect {rel}");
            assert!((ad.det() - 1.0).norm() <= 1e-9 * ad.matrix().norm().powi(3).max(1.0));
        }
    }
}

#[test]
fn killing_defect_small_entries() {
    // entries of modulus at most 2 keep the absolute error at the stated level
    let mut rng = common::rng(2);
    let g = killing_gram();
    for _ in 0..200 {
        let ad = adjoint_of(&common::random_sl2(&mut rng, 2.0));
        let defect = ad.matrix().transpose() * g * ad.matrix() - g;
        assert!(defect.iter().all(|z| z.norm() <= 1e-9));
        assert!((ad.det() - 1.0).norm() <= 1e-9);
    }
}

fn random_low_rank(rng: &mut rand_chacha::ChaCha8Rng, rows: usize, cols: usize, rank: usize) -> CMatrix {
    let left = CMatrix::from_fn(rows, rank, |_, _| common::complex_in_disc(rng, 1.0));
    let right = CMatrix::from_fn(rank, cols, |_, _| common::complex_in_disc(rng, 1.0));
    left * right
}

#[test]
fn nullspace_residual_and_dimension() {
    let mut rng = common::rng(3);
    for _ in 0..200 {
        let rows = rng.random_range(1..8);
        let cols = rng.random_range(1..8);
        let rank = rng.random_range(0..=rows.min(cols));
        let a = random_low_rank(&mut rng, rows, cols, rank);
        let n = nullspace(&a, 1e-8);
        assert_eq!(n.nrows(), cols - rank_with_tol(&a, 1e-8));
        assert_eq!(n.nrows(), cols - rank);
        for k in 0..n.nrows() {
            let x = n.row(k).transpose();
            assert!((&a * x).norm() <= 1e-10 * a.norm().max(1.0));
        }
    }
}

#[test]
fn intersection_dimension_formula() {
    let mut rng = common::rng(4);
    for _ in 0..200 {
        let n = rng.random_range(2..8);
        let shared = rng.random_range(0..n);
        let common_rows = CMatrix::from_fn(shared, n, |_, _| common::complex_in_disc(&mut rng, 1.0));
        let extra_u = rng.random_range(0..=n - shared);
        let extra_w = rng.random_range(0..=n - shared);
        let mk = |rng: &mut rand_chacha::ChaCha8Rng, extra: usize| {
            let more = CMatrix::from_fn(extra, n, |_, _| common::complex_in_disc(rng, 1.0));
            let mut m = CMatrix::zeros(shared + extra, n);
            m.rows_mut(0, shared).copy_from(&common_rows);
            m.rows_mut(shared, extra).copy_from(&more);
            m
        };
        let u = mk(&mut rng, extra_u);
        let w = mk(&mut rng, extra_w);
        let dim_u = rank_with_tol(&u, 1e-8);
        let dim_w = rank_with_tol(&w, 1e-8);
        let mut sum = CMatrix::zeros(u.nrows() + w.nrows(), n);
        sum.rows_mut(0, u.nrows()).copy_from(&u);
        sum.rows_mut(u.nrows(), w.nrows()).copy_from(&w);
        let dim_sum = if sum.nrows() == 0 { 0 } else { rank_with_tol(&sum, 1e-8) };
        let cap = subspace_intersection(&u, &w, 1e-8);
        assert_eq!(cap.nrows() + dim_sum, dim_u + dim_w);
        // every intersection vector lies in both spaces
        for k in 0..cap.nrows() {
            let x: Vec<Complex64> = cap.row(k).iter().copied().collect();
            for space in [&u, &w] {
                let mut aug = CMatrix::zeros(space.nrows() + 1, n);
                aug.rows_mut(0, space.nrows()).copy_from(space);
                aug.row_mut(space.nrows()).copy_from_slice(&x);
                assert_eq!(rank_with_tol(&aug, 1e-8), rank_with_tol(space, 1e-8));
            }
        }
    }
}
