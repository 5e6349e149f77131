//! Exact bivariate Laurent polynomials in `(L, M)` over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ApolyError;

/// Variable of a [`BiLaurent`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    L,
    M,
}

/// Finite sum of `c * L^i * M^j` with `c` rational and `i, j` integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiLaurent {
    terms: BTreeMap<(i64, i64), BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl BiLaurent {
    pub fn zero() -> Self {
        BiLaurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn monomial(c: BigRational, i: i64, j: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(i, j, c);
        out
    }

    /// `L^i M^j`.
    pub fn unit(i: i64, j: i64) -> Self {
        Self::monomial(BigRational::one(), i, j)
    }

    pub fn l() -> Self {
        Self::unit(1, 0)
    }

    pub fn m() -> Self {
        Self::unit(0, 1)
    }

    /// Builds from `(i, j, c)` triples; repeated exponents are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64, BigRational)>) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn from_int_terms(terms: &[(i64, i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(i, j, c)| (i, j, rat(c))))
    }

    pub fn add_term(&mut self, i: i64, j: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing `(i, j)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i64, &BigRational)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn coefficient(&self, i: i64, j: i64) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.keys().copied()
    }

    /// Smallest `(i, j)` exponents separately, `None` for zero.
    pub fn min_exponents(&self) -> Option<(i64, i64)> {
        let i = self.terms.keys().map(|k| k.0).min()?;
        let j = self.terms.keys().map(|k| k.1).min()?;
        Some((i, j))
    }

    pub fn max_exponents(&self) -> Option<(i64, i64)> {
        let i = self.terms.keys().map(|k| k.0).max()?;
        let j = self.terms.keys().map(|k| k.1).max()?;
        Some((i, j))
    }

    /// Largest exponent of `var`, `None` for zero.
    pub fn degree(&self, var: Var) -> Option<i64> {
        self.max_exponents().map(|(i, j)| if var == Var::L { i } else { j })
    }

    /// Whether only `M` occurs.
    pub fn is_free_of(&self, var: Var) -> bool {
        self.terms.keys().all(|&(i, j)| if var == Var::L { i == 0 } else { j == 0 })
    }

    /// Multiplication by `L^di M^dj`.
    pub fn shift(&self, di: i64, dj: i64) -> Self {
        BiLaurent { terms: self.terms.iter().map(|(&(i, j), c)| ((i + di, j + dj), c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        BiLaurent { terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Term-wise partial derivative.
    pub fn derivative(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            match var {
                Var::L if i != 0 => out.add_term(i - 1, j, c * rat(i)),
                Var::M if j != 0 => out.add_term(i, j - 1, c * rat(j)),
                _ => {}
            }
        }
        out
    }

    /// `A(L^-1, M^-1)`.
    pub fn invert_variables(&self) -> Self {
        BiLaurent { terms: self.terms.iter().map(|(&(i, j), c)| ((-i, -j), c.clone())).collect() }
    }

    /// Substitutes `L -> L^a M^b`, `M -> L^c M^d` in exponents.
    pub fn monomial_substitute(&self, a: i64, b: i64, c: i64, d: i64) -> Self {
        let mut out = Self::zero();
        for (&(i, j), coeff) in &self.terms {
            out.add_term(a * i + c * j, b * i + d * j, coeff.clone());
        }
        out
    }

    pub fn eval(&self, l: Complex64, m: Complex64) -> Complex64 {
        self.terms.iter().map(|(&(i, j), c)| to_f64(c) * l.powi(i as i32) * m.powi(j as i32)).sum()
    }

    /// `sum |c| |L|^i |M|^j`, the natural size of a value of `A` at `(L, M)`.
    pub fn magnitude_at(&self, l: Complex64, m: Complex64) -> f64 {
        let (al, am) = (l.norm(), m.norm());
        self.terms.iter().map(|(&(i, j), c)| to_f64(c).abs() * al.powi(i as i32) * am.powi(j as i32)).sum()
    }

    /// Multiplies out so that all exponents are nonnegative with minimum 0,
    /// returning the shift `(di, dj)` applied.
    pub fn to_polynomial(&self) -> (Self, (i64, i64)) {
        match self.min_exponents() {
            None => (Self::zero(), (0, 0)),
            Some((i, j)) => (self.shift(-i, -j), (-i, -j)),
        }
    }

    /// Lcm of denominators over gcd of numerators.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::zero();
        }
        BigRational::new(num, den)
    }

    /// Integer coefficients with gcd 1, sign of the lexicographically
    /// largest term positive. Exponents are kept.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        let mut out = self.scale(&c.recip());
        if out.terms.values().next_back().is_some_and(|c| c.is_negative()) {
            out = -&out;
        }
        out
    }

    /// Canonical representative up to units: exponents shifted so that the
    /// minimum `L` and `M` exponents are 0, integer content 1, and the
    /// lexicographically largest term positive.
    pub fn canonical(&self) -> Self {
        self.to_polynomial().0.primitive()
    }

    /// Lexicographic leading term `(i, j, c)`.
    pub fn leading_term(&self) -> Option<(i64, i64, &BigRational)> {
        self.terms.iter().next_back().map(|(&(i, j), c)| (i, j, c))
    }

    /// `self / other` when the quotient is a Laurent polynomial.
    pub fn div_exact(&self, other: &BiLaurent) -> Option<BiLaurent> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a, (ai, aj)) = self.to_polynomial();
        let (b, (bi, bj)) = other.to_polynomial();
        let q = poly_div_exact(&a, &b)?;
        Some(q.shift(bi - ai, bj - aj))
    }

    /// Coefficient of `L^k` as a polynomial in `M`.
    pub fn coeff_l(&self, k: i64) -> BiLaurent {
        BiLaurent {
            terms: self.terms.range((k, i64::MIN)..=(k, i64::MAX)).map(|(&(_, j), c)| ((0, j), c.clone())).collect(),
        }
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            terms: self.terms.iter().map(|(&(i, j), c)| (i, j, format!("{}/{}", c.numer(), c.denom()))).collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self, ApolyError> {
        let mut out = Self::zero();
        for (i, j, c) in &json.terms {
            let c = BigRational::from_str(c)
                .map_err(|_| ApolyError::Syntax { column: 0, message: format!("bad coefficient `{c}`") })?;
            out.add_term(*i, *j, c);
        }
        Ok(out)
    }
}

pub(crate) fn to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // fall back to a scaled conversion for huge numerators and denominators
        let n = c.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = c.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Exact division of polynomials with nonnegative exponents by repeated
/// removal of the lexicographic leading term.
fn poly_div_exact(a: &BiLaurent, b: &BiLaurent) -> Option<BiLaurent> {
    let (bi, bj, bc) = b.leading_term()?;
    let (bi, bj, bc) = (bi, bj, bc.clone());
    let mut rem = a.clone();
    let mut q = BiLaurent::zero();
    while let Some((ri, rj, rc)) = rem.leading_term() {
        let (di, dj) = (ri - bi, rj - bj);
        if di < 0 || dj < 0 {
            return None;
        }
        let c = rc / &bc;
        let t = BiLaurent::monomial(c.clone(), di, dj);
        rem = &rem - &(&t * b);
        q.add_term(di, dj, c);
    }
    Some(q)
}

/// JSON form `{terms: [[i, j, "num/den"], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<(i64, i64, String)>,
}

impl Add for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent { terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect() }
    }
}

impl Mul for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = BiLaurent::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, var: &str, e: i64) -> fmt::Result {
    if e == 1 {
        f.write_str(var)
    } else {
        write!(f, "{var}^{e}")
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (&(i, j), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let constant = i == 0 && j == 0;
            let mut need_star = false;
            if !a.is_one() || constant {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
                need_star = true;
            }
            for (var, e) in [("L", i), ("M", j)] {
                if e == 0 {
                    continue;
                }
                if need_star {
                    f.write_str("*")?;
                }
                fmt_power(f, var, e)?;
                need_star = true;
            }
        }
        Ok(())
    }
}

/// Text form: terms joined by `+`/`-`, each a product of an optional
/// rational and powers `L^k`, `M^k` in any order, with `*` optional.
pub fn format_bilaurent(a: &BiLaurent) -> String {
    a.to_string()
}

/// Parses the text form; the zero polynomial is rejected.
pub fn parse_bilaurent(text: &str) -> Result<BiLaurent, ApolyError> {
    let p = Parser { chars: text.char_indices().collect(), pos: 0 }.parse()?;
    if p.is_zero() {
        return Err(ApolyError::ZeroPolynomial);
    }
    Ok(p)
}

impl FromStr for BiLaurent {
    type Err = ApolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_bilaurent(s)
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn peek(&mut self) -> Option<char> {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i + 1)
            .unwrap_or_else(|| self.chars.last().map_or(1, |&(i, c)| i + c.len_utf8() + 1))
    }

    fn error(&self, message: impl Into<String>) -> ApolyError {
        ApolyError::Syntax { column: self.column(), message: message.into() }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.peek();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().ok()
    }

    fn signed_exponent(&mut self) -> Result<i64, ApolyError> {
        let close = match self.peek() {
            Some('(') => Some(')'),
            Some('{') => Some('}'),
            _ => None,
        };
        if close.is_some() {
            self.pos += 1;
        }
        let neg = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let n = self.integer().ok_or_else(|| self.error("expected exponent"))?;
        let n = n.to_i64().ok_or_else(|| self.error("exponent too large"))?;
        if let Some(close) = close {
            if self.peek() != Some(close) {
                return Err(self.error(format!("expected `{close}`")));
            }
            self.pos += 1;
        }
        Ok(if neg { -n } else { n })
    }

    fn term(&mut self) -> Result<BiLaurent, ApolyError> {
        let mut coeff = BigRational::one();
        let (mut i, mut j) = (0, 0);
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.integer().expect("digit present");
                    let mut q = BigRational::from_integer(n);
                    if self.peek() == Some('/') {
                        self.pos += 1;
                        let d = self.integer().ok_or_else(|| self.error("expected denominator"))?;
                        if d.is_zero() {
                            return Err(self.error("zero denominator"));
                        }
                        q /= BigRational::from_integer(d);
                    }
                    coeff *= q;
                }
                Some(v @ ('L' | 'M')) => {
                    self.pos += 1;
                    let e = if self.peek() == Some('^') {
                        self.pos += 1;
                        self.signed_exponent()?
                    } else {
                        1
                    };
                    if v == 'L' {
                        i += e;
                    } else {
                        j += e;
                    }
                }
                Some('(') => {
                    self.pos += 1;
                    let inner = self.sum()?;
                    if self.peek() != Some(')') {
                        return Err(self.error("expected `)`"));
                    }
                    self.pos += 1;
                    let prod = &BiLaurent::monomial(coeff, i, j) * &inner;
                    return self.rest_of_term(prod);
                }
                _ => {
                    if factors == 0 {
                        return Err(self.error("expected a term"));
                    }
                    break;
                }
            }
            factors += 1;
            if self.peek() == Some('*') {
                self.pos += 1;
                if !matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == 'L' || c == 'M' || c == '(') {
                    return Err(self.error("expected a factor after `*`"));
                }
            }
        }
        Ok(BiLaurent::monomial(coeff, i, j))
    }

    fn rest_of_term(&mut self, acc: BiLaurent) -> Result<BiLaurent, ApolyError> {
        match self.peek() {
            Some('*') => {
                self.pos += 1;
                let t = self.term()?;
                Ok(&acc * &t)
            }
            Some(c) if c.is_ascii_digit() || c == 'L' || c == 'M' || c == '(' => {
                let t = self.term()?;
                Ok(&acc * &t)
            }
            _ => Ok(acc),
        }
    }

    fn sum(&mut self) -> Result<BiLaurent, ApolyError> {
        let mut out = BiLaurent::zero();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            out = if neg { &out - &t } else { &out + &t };
        }
        Ok(out)
    }

    fn parse(mut self) -> Result<BiLaurent, ApolyError> {
        if self.peek().is_none() {
            return Err(self.error("empty polynomial"));
        }
        let out = self.sum()?;
        if self.peek().is_some() {
            return Err(self.error("unexpected character"));
        }
        Ok(out)
    }
}

/// Gcd of univariate polynomials in `M` (as dense ascending rationals).
fn ugcd_dense(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    fn trim(v: &mut Vec<BigRational>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let db = b.len() - 1;
        let lb = b[db].clone();
        while a.len() > db && !a.is_empty() {
            let da = a.len() - 1;
            let f = &a[da] / &lb;
            for k in 0..=db {
                let sub = &f * &b[k];
                a[da - db + k] -= sub;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(l) = a.last().cloned() {
        for c in &mut a {
            *c /= &l;
        }
    }
    a
}

fn to_dense_m(a: &BiLaurent) -> Vec<BigRational> {
    let (p, _) = a.to_polynomial();
    let deg = p.degree(Var::M).unwrap_or(-1);
    let mut out = vec![BigRational::zero(); (deg + 1) as usize];
    for (_, j, c) in p.terms() {
        out[j as usize] = c.clone();
    }
    out
}

fn from_dense_m(v: &[BigRational]) -> BiLaurent {
    BiLaurent::from_terms(v.iter().enumerate().map(|(j, c)| (0, j as i64, c.clone())))
}

/// Gcd in `Q[M]` of polynomials free of `L`, up to units.
fn gcd_m(a: &BiLaurent, b: &BiLaurent) -> BiLaurent {
    from_dense_m(&ugcd_dense(to_dense_m(a), to_dense_m(b)))
}

/// Gcd in `Q[M]` of the `L`-coefficients.
fn content_l(a: &BiLaurent) -> BiLaurent {
    let (lo, hi) = match (a.min_exponents(), a.max_exponents()) {
        (Some(lo), Some(hi)) => (lo.0, hi.0),
        _ => return BiLaurent::zero(),
    };
    let mut g = BiLaurent::zero();
    for k in lo..=hi {
        let c = a.coeff_l(k);
        if !c.is_zero() {
            g = if g.is_zero() { c.to_polynomial().0 } else { gcd_m(&g, &c) };
        }
        if g.len() == 1 && g.degree(Var::M) == Some(0) {
            break;
        }
    }
    g
}

fn primitive_part_l(a: &BiLaurent) -> BiLaurent {
    let c = content_l(a);
    a.div_exact(&c).expect("content divides").to_polynomial().0
}

/// Pseudo-remainder in `L` over `Q[M]` of polynomials.
fn prem_l(a: &BiLaurent, b: &BiLaurent) -> BiLaurent {
    let db = b.degree(Var::L).expect("nonzero divisor");
    let lb = b.coeff_l(db);
    let mut r = a.clone();
    while let Some(dr) = r.degree(Var::L).filter(|&d| d >= db && !r.is_zero()) {
        let lr = r.coeff_l(dr);
        r = &(&lb * &r) - &(&lr.shift(dr - db, 0) * b);
    }
    r
}

/// Gcd of two Laurent polynomials up to units, in canonical form.
/// The gcd of a polynomial and zero is the canonical form of the polynomial.
pub fn gcd(a: &BiLaurent, b: &BiLaurent) -> BiLaurent {
    if a.is_zero() {
        return b.canonical();
    }
    if b.is_zero() {
        return a.canonical();
    }
    let (a, _) = a.to_polynomial();
    let (b, _) = b.to_polynomial();
    let g_content = gcd_m(&content_l(&a), &content_l(&b));
    let mut p = primitive_part_l(&a);
    let mut q = primitive_part_l(&b);
    if p.degree(Var::L) < q.degree(Var::L) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = prem_l(&p, &q);
        p = q;
        q = if r.is_zero() { r } else { primitive_part_l(&r) };
    }
    (&primitive_part_l(&p) * &g_content).canonical()
}
