#![allow(dead_code)]

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use knot_slope::linalg::Sl2;
use knot_slope::presentation::{Letter, Word};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_in_disc(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}

/// `SL2(C)` matrix with entries of modulus at most `bound`: a random matrix
/// rescaled by a square root of its determinant.
pub fn random_sl2(rng: &mut ChaCha8Rng, bound: f64) -> Sl2 {
    loop {
        let m = Matrix2::from_fn(|_, _| complex_in_disc(rng, bound));
        let det = m.determinant();
        if det.norm() < 0.5 {
            continue;
        }
        let scaled = m / det.sqrt();
        if scaled.iter().all(|z| z.norm() <= bound) {
            return Sl2::normalized(m).expect("nonsingular");
        }
    }
}

pub fn random_word(rng: &mut ChaCha8Rng, generators: usize, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let g = rng.random_range(0..generators);
            if rng.random_bool(0.5) {
                Letter::new(g)
            } else {
                Letter::inv(g)
            }
        })
        .collect();
    Word::from_letters(letters)
}

/// Points `r e^{i theta}` on a grid over `[r0, r1] x [t0, t1]`, walked as a
/// single path so that neighbours stay close.
pub fn arc(n: usize, r0: f64, r1: f64, t0: f64, t1: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let s = if n == 1 { 0.0 } else { k as f64 / (n - 1) as f64 };
            Complex64::from_polar(r0 + s * (r1 - r0), t0 + s * (t1 - t0))
        })
        .collect()
}

pub fn rel_dev(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}
