//! Polynomials in `t` whose coefficients are Laurent polynomials in `(L, M)`.
//!
//! Arithmetic stays fraction-free: division only ever happens exactly, so
//! coefficients never leave the Laurent ring even though gcds and resultants
//! are taken over its fraction field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::bilaurent::{gcd, BiLaurent};
use super::ApolyError;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniPolyOverField {
    /// Coefficients in increasing degree; the last one is nonzero.
    coeffs: Vec<BiLaurent>,
}

impl UniPolyOverField {
    pub fn zero() -> Self {
        UniPolyOverField { coeffs: Vec::new() }
    }

    pub fn constant(c: BiLaurent) -> Self {
        Self::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::new(vec![BiLaurent::zero(), BiLaurent::one()])
    }

    pub fn new(mut coeffs: Vec<BiLaurent>) -> Self {
        while coeffs.last().is_some_and(BiLaurent::is_zero) {
            coeffs.pop();
        }
        UniPolyOverField { coeffs }
    }

    pub fn coeffs(&self) -> &[BiLaurent] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BiLaurent {
        self.coeffs.get(k).cloned().unwrap_or_else(BiLaurent::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BiLaurent> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BiLaurent) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BiLaurent::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Gcd of the coefficients, in canonical form.
    pub fn content(&self) -> BiLaurent {
        self.coeffs.iter().fold(BiLaurent::zero(), |g, c| if g.is_one() { g } else { gcd(&g, c) })
    }

    /// Divides out the content and fixes the sign so the leading coefficient's
    /// lexicographically largest term is positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        let mut out = Self::new(self.coeffs.iter().map(|a| a.div_exact(&c).expect("content divides")).collect());
        let lc_sign_negative = out.leading_coeff().and_then(|l| l.terms().next_back()).is_some_and(|(_, _, c)| {
            use num_traits::Signed;
            c.is_negative()
        });
        if lc_sign_negative {
            out = -&out;
        }
        out
    }

    /// Pseudo-remainder: `r` with `lc(b)^e a = q b + r`, `deg r < deg b`,
    /// where `e = max(deg a - deg b + 1, 0)`. Returns `(r, e)`.
    pub fn prem(&self, b: &Self) -> (Self, u32) {
        let db = b.degree().expect("nonzero divisor");
        let lb = b.leading_coeff().expect("nonzero divisor").clone();
        let Some(da) = self.degree() else {
            return (Self::zero(), 0);
        };
        if da < db {
            return (self.clone(), 0);
        }
        let mut e = (da - db + 1) as u32;
        let mut r = self.clone();
        while let Some(dr) = r.degree().filter(|&d| d >= db) {
            let lr = r.leading_coeff().expect("nonzero").clone();
            r = &r.scale(&lb) - &b.scale(&lr).shift(dr - db);
            e -= 1;
        }
        (r.scale(&lb.pow(e)), (da - db + 1) as u32)
    }

    /// Gcd over the fraction field of the coefficient ring, as a primitive
    /// polynomial. The gcd with zero is the primitive part.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut p, mut q) = (self.primitive_part(), other.primitive_part());
        if p.degree() < q.degree() {
            std::mem::swap(&mut p, &mut q);
        }
        while !q.is_zero() {
            let (r, _) = p.prem(&q);
            p = q;
            q = r.primitive_part();
        }
        p.primitive_part()
    }

    /// Value at `t = c`.
    pub fn eval_at(&self, c: &BiLaurent) -> BiLaurent {
        self.coeffs.iter().rev().fold(BiLaurent::zero(), |acc, a| &(&acc * c) + a)
    }
}

/// Determinant by fraction-free Bareiss elimination; every division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<BiLaurent>>) -> BiLaurent {
    let n = m.len();
    if n == 0 {
        return BiLaurent::one();
    }
    let mut sign = false;
    let mut prev = BiLaurent::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BiLaurent::zero();
            };
            m.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = BiLaurent::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

/// Sylvester matrix of `p` and `q` in `t`: `deg q` shifted rows of `p`'s
/// coefficients followed by `deg p` rows of `q`'s, highest degree first.
pub fn sylvester_matrix(p: &UniPolyOverField, q: &UniPolyOverField) -> Vec<Vec<BiLaurent>> {
    let (dp, dq) = (p.degree().unwrap_or(0), q.degree().unwrap_or(0));
    let n = dp + dq;
    let mut rows = Vec::with_capacity(n);
    for (poly, deg, count) in [(p, dp, dq), (q, dq, dp)] {
        for r in 0..count {
            let mut row = vec![BiLaurent::zero(); n];
            for k in 0..=deg {
                row[r + k] = poly.coeff(deg - k);
            }
            rows.push(row);
        }
    }
    rows
}

/// `Res_t(p, q) = lc(p)^deg q * prod q(roots of p)`, the Sylvester determinant.
/// A vanishing resultant is reported as an error.
pub fn resultant_t(p: &UniPolyOverField, q: &UniPolyOverField) -> Result<BiLaurent, ApolyError> {
    let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
        return Err(ApolyError::ZeroResultant);
    };
    if dp == 0 && dq == 0 {
        return Ok(BiLaurent::one());
    }
    let r = bareiss_determinant(sylvester_matrix(p, q));
    if r.is_zero() {
        return Err(ApolyError::ZeroResultant);
    }
    Ok(r)
}

impl Add for &UniPolyOverField {
    type Output = UniPolyOverField;
    fn add(self, rhs: &UniPolyOverField) -> UniPolyOverField {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPolyOverField::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPolyOverField {
    type Output = UniPolyOverField;
    fn sub(self, rhs: &UniPolyOverField) -> UniPolyOverField {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPolyOverField::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Neg for &UniPolyOverField {
    type Output = UniPolyOverField;
    fn neg(self) -> UniPolyOverField {
        UniPolyOverField::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPolyOverField {
    type Output = UniPolyOverField;
    fn mul(self, rhs: &UniPolyOverField) -> UniPolyOverField {
        if self.is_zero() || rhs.is_zero() {
            return UniPolyOverField::zero();
        }
        let mut out = vec![BiLaurent::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPolyOverField::new(out)
    }
}

impl fmt::Display for UniPolyOverField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        Ok(())
    }
}

/// 2x2 matrix over `UniPolyOverField`, row-major.
#[derive(Clone, Debug)]
pub struct UniPolyMat2(pub [UniPolyOverField; 4]);

impl UniPolyMat2 {
    pub fn identity() -> Self {
        let one = UniPolyOverField::constant(BiLaurent::one());
        UniPolyMat2([one.clone(), UniPolyOverField::zero(), UniPolyOverField::zero(), one])
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &rhs.0;
        UniPolyMat2([&(a * e) + &(b * g), &(a * f) + &(b * h), &(c * e) + &(d * g), &(c * f) + &(d * h)])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &rhs.0;
        UniPolyMat2([a - e, b - f, c - g, d - h])
    }
}
