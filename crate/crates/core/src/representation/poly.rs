//! Univariate polynomials with complex coefficients, used to locate Riley
//! roots numerically.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Coefficients in increasing degree.
#[derive(Clone, Debug, PartialEq)]
pub struct CPoly(pub Vec<Complex64>);

impl CPoly {
    pub fn zero() -> Self {
        CPoly(Vec::new())
    }

    pub fn constant(c: Complex64) -> Self {
        CPoly(vec![c]).trimmed(0.0)
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        CPoly(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.0
    }

    pub fn max_coeff(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Drops leading coefficients of modulus at most `eps`.
    pub fn trimmed(mut self, eps: f64) -> Self {
        while self.0.last().is_some_and(|z| z.norm() <= eps) {
            self.0.pop();
        }
        self
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|z| *z != Complex64::new(0.0, 0.0))
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.0.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> CPoly {
        CPoly(self.0.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect())
    }

    /// All roots with multiplicity: companion-matrix eigenvalues refined by
    /// Newton steps on the polynomial itself.
    pub fn roots(&self) -> Vec<Complex64> {
        let p = self.clone().trimmed(0.0);
        let Some(n) = p.degree().filter(|&n| n > 0) else {
            return Vec::new();
        };
        let lead = p.0[n];
        let mut companion = DMatrix::<Complex64>::zeros(n, n);
        for i in 1..n {
            companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..n {
            companion[(i, n - 1)] = -p.0[i] / lead;
        }
        let raw: Vec<Complex64> = match companion.clone().eigenvalues() {
            Some(ev) if ev.iter().all(|z| z.re.is_finite() && z.im.is_finite()) => ev.iter().copied().collect(),
            _ => durand_kerner(&p),
        };
        let dp = p.derivative();
        raw.into_iter().map(|z| polish(&p, &dp, z)).collect()
    }
}

fn polish(p: &CPoly, dp: &CPoly, mut z: Complex64) -> Complex64 {
    let mut best = (p.eval(z).norm(), z);
    for _ in 0..60 {
        let d = dp.eval(z);
        if d.norm() == 0.0 {
            break;
        }
        let step = p.eval(z) / d;
        z -= step;
        let r = p.eval(z).norm();
        if r < best.0 {
            best = (r, z);
        }
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    best.1
}

fn durand_kerner(p: &CPoly) -> Vec<Complex64> {
    let n = p.degree().unwrap_or(0);
    let lead = p.0[n];
    let monic = CPoly(p.0.iter().map(|c| c / lead).collect());
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let prev = z.clone();
        for i in 0..n {
            let denom: Complex64 = (0..n).filter(|&j| j != i).map(|j| z[i] - z[j]).product();
            let step = monic.eval(z[i]) / denom;
            z[i] -= step;
        }
        if z.iter().zip(&prev).all(|(a, b)| (a - b).norm() < 1e-15) {
            break;
        }
    }
    z
}

impl Add for &CPoly {
    type Output = CPoly;
    fn add(self, rhs: &CPoly) -> CPoly {
        let n = self.0.len().max(rhs.0.len());
        let zero = Complex64::new(0.0, 0.0);
        CPoly((0..n).map(|i| self.0.get(i).copied().unwrap_or(zero) + rhs.0.get(i).copied().unwrap_or(zero)).collect())
    }
}

impl Neg for &CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        CPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub for &CPoly {
    type Output = CPoly;
    fn sub(self, rhs: &CPoly) -> CPoly {
        self + &(-rhs)
    }
}

impl Mul for &CPoly {
    type Output = CPoly;
    fn mul(self, rhs: &CPoly) -> CPoly {
        if self.0.is_empty() || rhs.0.is_empty() {
            return CPoly::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CPoly(out)
    }
}

/// 2x2 matrix with polynomial entries, row-major.
#[derive(Clone, Debug)]
pub struct PolyMat2(pub [CPoly; 4]);

impl PolyMat2 {
    pub fn constant(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        PolyMat2([CPoly::constant(a), CPoly::constant(b), CPoly::constant(c), CPoly::constant(d)])
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self::constant(o, z, z, o)
    }

    pub fn mul(&self, rhs: &PolyMat2) -> PolyMat2 {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &rhs.0;
        PolyMat2([&(a * e) + &(b * g), &(a * f) + &(b * h), &(c * e) + &(d * g), &(c * f) + &(d * h)])
    }

    pub fn sub(&self, rhs: &PolyMat2) -> PolyMat2 {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &rhs.0;
        PolyMat2([a - e, b - f, c - g, d - h])
    }
}
