//! Newton polygons of bivariate Laurent polynomials and the slopes read
//! from their sides.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::bilaurent::BiLaurent;
use super::ApolyError;

/// Exact slope `dj / di` of a side, infinite when `di = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SideSlope {
    Finite(BigRational),
    Infinite,
}

impl SideSlope {
    fn of(di: i64, dj: i64) -> Self {
        if di == 0 {
            SideSlope::Infinite
        } else {
            SideSlope::Finite(BigRational::new(BigInt::from(dj), BigInt::from(di)))
        }
    }

    /// `-s`, with infinity fixed.
    pub fn negated(&self) -> Self {
        match self {
            SideSlope::Finite(q) => SideSlope::Finite(-q.clone()),
            SideSlope::Infinite => SideSlope::Infinite,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        SideSlope::Finite(BigRational::from_integer(BigInt::from(n)))
    }
}

impl fmt::Display for SideSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideSlope::Infinite => f.write_str("inf"),
            SideSlope::Finite(q) if q.is_integer() => write!(f, "{}", q.numer()),
            SideSlope::Finite(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl Serialize for SideSlope {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SideSlope::Infinite => s.serialize_str("inf"),
            SideSlope::Finite(q) => s.serialize_str(&format!("{}/{}", q.numer(), q.denom())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Side {
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub slope: SideSlope,
}

/// Convex hull of the support, vertices counterclockwise starting at the
/// lexicographically smallest one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i64, i64)>,
    pub sides: Vec<Side>,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

/// Monotone chain hull; collinear points are dropped.
pub fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() == 2 && hull[0] == hull[1] {
        hull.pop();
    }
    hull
}

pub fn newton_polygon(a: &BiLaurent) -> Result<NewtonPolygon, ApolyError> {
    if a.is_zero() {
        return Err(ApolyError::ZeroPolynomial);
    }
    let support: Vec<(i64, i64)> = a.support().collect();
    let vertices = convex_hull(&support);
    let sides = match vertices.len() {
        1 => Vec::new(),
        2 => {
            let (p, q) = (vertices[0], vertices[1]);
            vec![Side { from: p, to: q, slope: SideSlope::of(q.0 - p.0, q.1 - p.1) }]
        }
        n => (0..n)
            .map(|k| {
                let (p, q) = (vertices[k], vertices[(k + 1) % n]);
                Side { from: p, to: q, slope: SideSlope::of(q.0 - p.0, q.1 - p.1) }
            })
            .collect(),
    };
    Ok(NewtonPolygon { vertices, sides })
}

impl NewtonPolygon {
    /// Whether `p` lies inside or on the boundary.
    pub fn contains(&self, p: (i64, i64)) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => self.vertices[0] == p,
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                cross(a, b, p) == 0
                    && p.0 >= a.0.min(b.0)
                    && p.0 <= a.0.max(b.0)
                    && p.1 >= a.1.min(b.1)
                    && p.1 <= a.1.max(b.1)
            }
            n => (0..n).all(|k| cross(self.vertices[k], self.vertices[(k + 1) % n], p) >= 0),
        }
    }

    /// Lower-left corner of the bounding box.
    pub fn min_corner(&self) -> Option<(i64, i64)> {
        let i = self.vertices.iter().map(|v| v.0).min()?;
        let j = self.vertices.iter().map(|v| v.1).min()?;
        Some((i, j))
    }
}

/// Distinct side slopes in order of appearance; parallel sides count once.
pub fn side_slopes(p: &NewtonPolygon) -> Result<Vec<SideSlope>, ApolyError> {
    if p.vertices.len() < 2 {
        return Err(ApolyError::DegeneratePolygon);
    }
    let mut out: Vec<SideSlope> = Vec::new();
    for s in &p.sides {
        if !out.contains(&s.slope) {
            out.push(s.slope.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdealSlope {
    pub side_slope: SideSlope,
    /// `-side_slope`, the value of the slope at the corresponding ideal points.
    pub ideal_slope: SideSlope,
    /// `(v(L), v(M))`: the primitive inward normal of the first side with
    /// this slope.
    pub valuation: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdealSlopeReport {
    pub sides: Vec<IdealSlope>,
}

impl IdealSlopeReport {
    pub fn ideal_slopes(&self) -> Vec<SideSlope> {
        self.sides.iter().map(|s| s.ideal_slope.clone()).collect()
    }

    pub fn contains_ideal(&self, s: &SideSlope) -> bool {
        self.sides.iter().any(|e| &e.ideal_slope == s)
    }
}

pub fn ideal_point_slopes(a: &BiLaurent) -> Result<IdealSlopeReport, ApolyError> {
    if a.is_zero() {
        return Err(ApolyError::ZeroPolynomial);
    }
    if a.is_monomial() {
        return Err(ApolyError::DegeneratePolygon);
    }
    let polygon = newton_polygon(a)?;
    let mut sides: Vec<IdealSlope> = Vec::new();
    for s in &polygon.sides {
        if sides.iter().any(|e| e.side_slope == s.slope) {
            continue;
        }
        let (di, dj) = (s.to.0 - s.from.0, s.to.1 - s.from.1);
        let g = di.gcd(&dj).max(1);
        sides.push(IdealSlope {
            side_slope: s.slope.clone(),
            ideal_slope: s.slope.negated(),
            valuation: (-dj / g, di / g),
        });
    }
    Ok(IdealSlopeReport { sides })
}

/// Whether a rational slope is an integer equal to `n`.
pub fn is_integer_slope(s: &SideSlope, n: i64) -> bool {
    matches!(s, SideSlope::Finite(q) if q.is_integer() && *q.numer() == BigInt::from(n))
}

impl SideSlope {
    pub fn is_zero(&self) -> bool {
        matches!(self, SideSlope::Finite(q) if q.is_zero())
    }
}
