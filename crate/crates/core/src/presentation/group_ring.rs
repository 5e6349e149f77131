use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::word::{Letter, Word};

/// Finite integer combination of freely reduced words: an element of `Z[F]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        Self::monomial(1, w)
    }

    pub fn monomial(coeff: i64, w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(coeff, w);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(&w.free_reduce()).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, coeff: i64, w: Word) {
        if coeff == 0 {
            return;
        }
        let w = w.free_reduce();
        let c = self.terms.get(&w).copied().unwrap_or(0) + coeff;
        if c == 0 {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, c);
        }
    }

    /// `w * self`.
    pub fn left_mul_word(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (u, c) in self.terms() {
            out.add_term(c, w.concat(u));
        }
        out
    }

    /// `self * w`.
    pub fn right_mul_word(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (u, c) in self.terms() {
            out.add_term(c, u.concat(w));
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (u, c) in self.terms() {
            out.add_term(c * k, u.clone());
        }
        out
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> GroupRingDisplay<'a> {
        GroupRingDisplay { elem: self, names }
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(c, w.clone());
        }
        out
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(-c, w.clone());
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        self.scale(-1)
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in rhs.terms() {
                out.add_term(ca * cb, a.concat(b));
            }
        }
        out
    }
}

/// Fox derivative `dw/dx` in the group ring of the free group.
///
/// Uses `d(x)/dx = 1`, `d(x^-1)/dx = -x^-1` and the product rule
/// `d(uv)/dx = du/dx + u dv/dx`, read off letter by letter.
pub fn fox_derivative(w: &Word, x: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        if l.generator == x {
            if l.inverse {
                let mut p = prefix.clone();
                p.push(Letter::inv(x));
                out.add_term(-1, p);
            } else {
                out.add_term(1, prefix.clone());
            }
        }
        prefix.push(l);
    }
    out
}

pub struct GroupRingDisplay<'a> {
    elem: &'a GroupRingElement,
    names: &'a [String],
}

impl fmt::Display for GroupRingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.elem.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if a == 1 {
                write!(f, "{}", w.display(self.names))?;
            } else if w.is_empty() {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}*{}", w.display(self.names))?;
            }
        }
        Ok(())
    }
}
