//! A-polynomials of two-generator presentations by eliminating the Riley
//! parameter `t`.

use serde::Serialize;

use super::bilaurent::{gcd, BiLaurent, Var};
use super::unipoly::{resultant_t, UniPolyMat2, UniPolyOverField};
use super::ApolyError;
use crate::presentation::{KnotPresentation, Word};

#[derive(Clone, Debug, PartialEq)]
pub struct ApolyResult {
    /// Canonical squarefree A-polynomial.
    pub polynomial: BiLaurent,
    /// Canonical `gcd(R, dR/dL)` of the content-free resultant `R`; 1 when
    /// `R` is squarefree.
    pub repeated: BiLaurent,
    /// Content-free resultant before squarefree reduction.
    pub resultant: BiLaurent,
    /// Gcd of the relator entries over `Q(M)[t]`.
    pub riley_polynomial: UniPolyOverField,
    /// Whether `L - 1` was appended.
    pub reducible_factor_added: bool,
}

#[derive(Serialize)]
struct ApolyJson {
    polynomial: String,
    repeated: String,
    riley_polynomial: String,
    reducible_factor_added: bool,
}

impl ApolyResult {
    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::to_value(ApolyJson {
            polynomial: self.polynomial.to_string(),
            repeated: self.repeated.to_string(),
            riley_polynomial: self.riley_polynomial.to_string(),
            reducible_factor_added: self.reducible_factor_added,
        })
        .expect("strings serialize")
    }
}

fn constant(c: BiLaurent) -> UniPolyOverField {
    UniPolyOverField::constant(c)
}

/// Riley matrices over `Q[M^+-1][t]`: the meridian generator goes to
/// `[[M, 1], [0, M^-1]]` and the other to `[[M, 0], [t, M^-1]]`.
fn riley_generators() -> [UniPolyMat2; 4] {
    let m = BiLaurent::m();
    let mi = BiLaurent::unit(0, -1);
    let one = BiLaurent::one();
    let zero = UniPolyOverField::zero();
    let t = UniPolyOverField::t();
    let u = UniPolyMat2([constant(m.clone()), constant(one.clone()), zero.clone(), constant(mi.clone())]);
    let u_inv = UniPolyMat2([constant(mi.clone()), constant(-&one), zero.clone(), constant(m.clone())]);
    let v = UniPolyMat2([constant(m.clone()), zero.clone(), t.clone(), constant(mi.clone())]);
    let v_inv = UniPolyMat2([constant(mi), zero, -&t, constant(m)]);
    [u, u_inv, v, v_inv]
}

fn symbolic(w: &Word, meridian: usize, gens: &[UniPolyMat2; 4]) -> UniPolyMat2 {
    w.letters().iter().fold(UniPolyMat2::identity(), |acc, l| {
        let base = if l.generator == meridian { 0 } else { 2 };
        acc.mul(&gens[base + usize::from(l.inverse)])
    })
}

fn check_shape(pres: &KnotPresentation) -> Result<usize, ApolyError> {
    if pres.generator_count() != 2 {
        return Err(ApolyError::NotTwoGenerator(pres.generator_count()));
    }
    pres.meridian_generator().ok_or(ApolyError::MeridianNotGenerator)
}

/// Gcd over `Q(M)[t]` of the entries of `rho(lhs) - rho(rhs)` over all
/// relations, in primitive form.
pub fn riley_polynomial(pres: &KnotPresentation) -> Result<UniPolyOverField, ApolyError> {
    let meridian = check_shape(pres)?;
    let gens = riley_generators();
    let mut phi = UniPolyOverField::zero();
    for r in pres.relations() {
        let d = symbolic(&r.lhs, meridian, &gens).sub(&symbolic(&r.rhs, meridian, &gens));
        for e in d.0 {
            if !e.is_zero() {
                phi = if phi.is_zero() { e.primitive_part() } else { phi.gcd(&e) };
            }
        }
    }
    if phi.is_zero() {
        return Err(ApolyError::RelatorsVanish);
    }
    Ok(phi)
}

/// The `M`-content (gcd of the `L`-coefficients) of `a`.
fn content_in_m(a: &BiLaurent) -> BiLaurent {
    let (lo, hi) = match (a.min_exponents(), a.max_exponents()) {
        (Some(lo), Some(hi)) => (lo.0, hi.0),
        _ => return BiLaurent::zero(),
    };
    (lo..=hi).map(|k| a.coeff_l(k)).filter(|c| !c.is_zero()).fold(BiLaurent::zero(), |g, c| gcd(&g, &c))
}

/// A-polynomial of a two-generator presentation whose generators are both
/// meridians.
///
/// The Riley polynomial `phi(M, t)` is eliminated against the longitude
/// eigenvalue `lambda(M, t)`, the `(1, 1)` entry of the longitude image:
/// with `c lambda = r mod phi` for a power `c` of the leading coefficient,
/// the result is the squarefree part of the `M`-content-free
/// `Res_t(phi, c L - r)`, in canonical form. With `with_reducible` the
/// abelian factor `L - 1` is appended when it does not already divide.
pub fn compute_apoly_twobridge(pres: &KnotPresentation, with_reducible: bool) -> Result<ApolyResult, ApolyError> {
    let meridian = check_shape(pres)?;
    let phi = riley_polynomial(pres)?;
    if phi.degree() == Some(0) {
        return Err(ApolyError::NoIrreducibleComponent);
    }
    let gens = riley_generators();
    let lambda = symbolic(pres.longitude(), meridian, &gens).0[0].clone();
    let (r, e) = lambda.prem(&phi);
    let c = phi.leading_coeff().expect("nonzero").pow(e);
    let q = &constant(&c * &BiLaurent::l()) - &r;
    let res = resultant_t(&phi, &q)?;
    let content = content_in_m(&res);
    let res = res.div_exact(&content).expect("content divides").canonical();
    if res.degree(Var::L).unwrap_or(0) == 0 {
        return Err(ApolyError::NoIrreducibleComponent);
    }
    let repeated = gcd(&res, &res.derivative(Var::L));
    let mut polynomial = res.div_exact(&repeated).expect("gcd divides").canonical();
    let l_minus_one = &BiLaurent::l() - &BiLaurent::one();
    let mut reducible_factor_added = false;
    if with_reducible && polynomial.div_exact(&l_minus_one).is_none() {
        polynomial = (&polynomial * &l_minus_one).canonical();
        reducible_factor_added = true;
    }
    Ok(ApolyResult { polynomial, repeated, resultant: res, riley_polynomial: phi, reducible_factor_added })
}

#[cfg(test)]
mod tests {
    use super::super::bilaurent::parse_bilaurent;
    use super::*;
    use crate::presentation::parse_presentation;

    const TREFOIL: &str = "gens: u v ; rel: u v u = v u v ; meridian: u ; longitude: v u v^-1 u v u^-3";

    #[test]
    fn trefoil_apoly() {
        let pres = parse_presentation(TREFOIL).unwrap();
        let a = compute_apoly_twobridge(&pres, false).unwrap();
        assert_eq!(a.polynomial, parse_bilaurent("1 + L*M^6").unwrap());
        assert!(a.repeated.is_one());
        assert!(!a.reducible_factor_added);
        let b = compute_apoly_twobridge(&pres, true).unwrap();
        assert_eq!(b.polynomial, parse_bilaurent("(L - 1)(1 + L*M^6)").unwrap().canonical());
        assert!(b.reducible_factor_added);
    }

    #[test]
    fn degenerate_relator() {
        let pres = parse_presentation("gens: u v ; rel: u = v ; meridian: u ; longitude: u v^-1").unwrap();
        assert_eq!(compute_apoly_twobridge(&pres, false), Err(ApolyError::NoIrreducibleComponent));
    }

    #[test]
    fn shape_errors() {
        let three = parse_presentation("gens: a b c ; rel: a = b ; meridian: a ; longitude: a b^-1").unwrap();
        assert_eq!(compute_apoly_twobridge(&three, false), Err(ApolyError::NotTwoGenerator(3)));
        let trivial = parse_presentation("gens: u v ; rel: u v = u v ; meridian: u ; longitude: u v^-1").unwrap();
        assert_eq!(compute_apoly_twobridge(&trivial, false), Err(ApolyError::RelatorsVanish));
    }
}
