//! Exact two-dimensional lattice geometry.
//!
//! The same vector type serves both lattices that appear in toric geometry:
//! `N`, where the rays of a fan live, and its dual `M`, where the exponents
//! of Laurent monomials live. The pairing between them is the ordinary dot
//! product.
//!
//! Coordinates are `i64`. Determinants and pairings are computed in `i128`
//! and line intersections in arbitrary-precision rationals, so no operation
//! here rounds or overflows silently.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `N` or `M`, serialized as `[x, y]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[derive(Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticeVector {
    pub x: i64,
    pub y: i64,
}

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// `gcd(|x|, |y|) == 1`. The zero vector is never primitive.
    pub fn is_primitive(self) -> bool {
        gcd(self.x as i128, self.y as i128) == 1
    }

    /// The evaluation pairing `<m, n> = m.x n.x + m.y n.y`.
    pub fn pairing(self, other: LatticeVector) -> i128 {
        self.x as i128 * other.x as i128 + self.y as i128 * other.y as i128
    }

    /// Direction of the line `{m : <m, self> = c}`, oriented so that the
    /// half-plane `<m, self> >= c` lies on its left.
    pub fn edge_direction(self) -> LatticeVector {
        LatticeVector::new(self.y, -self.x)
    }

    pub fn to_rational(self) -> RationalPoint {
        RationalPoint::from(self)
    }
}

impl From<[i64; 2]> for LatticeVector {
    fn from([x, y]: [i64; 2]) -> Self {
        Self { x, y }
    }
}

impl From<LatticeVector> for [i64; 2] {
    fn from(v: LatticeVector) -> Self {
        [v.x, v.y]
    }
}

impl From<(i64, i64)> for LatticeVector {
    fn from((x, y): (i64, i64)) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: Self) -> Self {
        LatticeVector::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: Self) -> Self {
        LatticeVector::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> Self {
        LatticeVector::new(-self.x, -self.y)
    }
}

impl Mul<LatticeVector> for i64 {
    type Output = LatticeVector;
    fn mul(self, rhs: LatticeVector) -> LatticeVector {
        LatticeVector::new(self * rhs.x, self * rhs.y)
    }
}

/// Non-negative gcd with `gcd(0, 0) = 0`.
pub fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

/// `u.x * v.y - u.y * v.x`.
pub fn det2(u: LatticeVector, v: LatticeVector) -> i128 {
    u.x as i128 * v.y as i128 - u.y as i128 * v.x as i128
}

/// Splits `v` as `k * p` with `p` primitive and `k > 0`.
pub fn primitivize(v: LatticeVector) -> Result<(LatticeVector, u64)> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let k = gcd(v.x as i128, v.y as i128);
    let p = LatticeVector::new((v.x as i128 / k) as i64, (v.y as i128 / k) as i64);
    Ok((p, k as u64))
}

/// Lattice length of the segment `[a, b]`: zero when `a == b`, otherwise one
/// more than the number of lattice points strictly between them.
pub fn lattice_distance(a: LatticeVector, b: LatticeVector) -> u64 {
    let dx = b.x as i128 - a.x as i128;
    let dy = b.y as i128 - a.y as i128;
    // |dx|, |dy| < 2^64, so the gcd fits.
    gcd(dx, dy) as u64
}

/// A point of `M ⊗ Q` with reduced coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Self { x, y }
    }

    pub fn is_lattice(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// The point as a lattice vector, if it is integral and fits in `i64`.
    pub fn to_lattice(&self) -> Option<LatticeVector> {
        if !self.is_lattice() {
            return None;
        }
        Some(LatticeVector::new(
            self.x.to_integer().to_i64()?,
            self.y.to_integer().to_i64()?,
        ))
    }

    /// Value of `<self, n>`.
    pub fn pairing(&self, n: LatticeVector) -> BigRational {
        &self.x * BigRational::from(BigInt::from(n.x))
            + &self.y * BigRational::from(BigInt::from(n.y))
    }
}

impl From<LatticeVector> for RationalPoint {
    fn from(v: LatticeVector) -> Self {
        Self {
            x: BigRational::from(BigInt::from(v.x)),
            y: BigRational::from(BigInt::from(v.y)),
        }
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(s)
    }
}

/// The line `{ m in M : <m, normal> = level }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Line {
    normal: LatticeVector,
    level: i128,
}

impl Line {
    pub fn new(normal: LatticeVector, level: i128) -> Result<Self> {
        if !normal.is_primitive() {
            return Err(Error::NonPrimitiveRay(normal));
        }
        Ok(Self { normal, level })
    }

    pub fn normal(&self) -> LatticeVector {
        self.normal
    }

    pub fn level(&self) -> i128 {
        self.level
    }

    pub fn contains(&self, m: LatticeVector) -> bool {
        m.pairing(self.normal) == self.level
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normal;
        write!(f, "{}x + {}y = {}", n.x, n.y, self.level)
    }
}

/// The unique common point of two non-parallel lines, by Cramer's rule.
pub fn line_intersection(l1: &Line, l2: &Line) -> Result<RationalPoint> {
    let (a, b) = (l1.normal, l2.normal);
    let det = det2(a, b);
    if det == 0 {
        return Err(Error::ParallelLines(a, b));
    }
    let big = |v: i128| BigInt::from(v);
    let det = big(det);
    let x = big(l1.level) * big(b.y as i128) - big(l2.level) * big(a.y as i128);
    let y = big(a.x as i128) * big(l2.level) - big(b.x as i128) * big(l1.level);
    Ok(RationalPoint::new(
        BigRational::new(x, det.clone()),
        BigRational::new(y, det),
    ))
}

/// Shape of a convex hull.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolygonKind {
    Point,
    Segment,
    Polygon,
}

/// Convex lattice polygon, possibly degenerate.
///
/// Vertices run counter-clockwise starting from the lexicographically
/// smallest one. A segment stores its two endpoints in lexicographic order;
/// a point stores one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<LatticeVector>,
}

impl LatticePolygon {
    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn kind(&self) -> PolygonKind {
        match self.vertices.len() {
            1 => PolygonKind::Point,
            2 => PolygonKind::Segment,
            _ => PolygonKind::Polygon,
        }
    }

    /// Closed boundary edges `(v_i, v_{i+1})`. A segment yields both
    /// directions, a point yields nothing.
    pub fn edges(&self) -> impl Iterator<Item = (LatticeVector, LatticeVector)> + '_ {
        let n = self.vertices.len();
        let count = if n == 1 { 0 } else { n };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Twice the enclosed area, from the shoelace sum.
    pub fn twice_area(&self) -> i128 {
        self.edges().map(|(a, b)| det2(a, b)).sum::<i128>().abs()
    }

    pub fn boundary_lattice_points(&self) -> u64 {
        match self.kind() {
            PolygonKind::Point => 1,
            PolygonKind::Segment => lattice_distance(self.vertices[0], self.vertices[1]) + 1,
            PolygonKind::Polygon => self.edges().map(|(a, b)| lattice_distance(a, b)).sum(),
        }
    }

    /// Strictly interior lattice points, from Pick's formula
    /// `2A = 2I + B - 2`. Degenerate hulls have none.
    pub fn interior_lattice_points(&self) -> u64 {
        match self.kind() {
            PolygonKind::Point | PolygonKind::Segment => 0,
            PolygonKind::Polygon => {
                let b = self.boundary_lattice_points() as i128;
                ((self.twice_area() - b + 2) / 2) as u64
            }
        }
    }

    /// Membership in the closed region.
    pub fn contains(&self, p: LatticeVector) -> bool {
        match self.kind() {
            PolygonKind::Point => self.vertices[0] == p,
            PolygonKind::Segment => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                det2(b - a, p - a) == 0 && (p - a).pairing(b - a) >= 0 && (p - b).pairing(a - b) >= 0
            }
            PolygonKind::Polygon => self.edges().all(|(a, b)| det2(b - a, p - a) >= 0),
        }
    }

    /// Whether `p` lies on the boundary of the closed region.
    pub fn on_boundary(&self, p: LatticeVector) -> bool {
        match self.kind() {
            PolygonKind::Point | PolygonKind::Segment => self.contains(p),
            PolygonKind::Polygon => {
                self.contains(p) && self.edges().any(|(a, b)| det2(b - a, p - a) == 0)
            }
        }
    }
}

impl Serialize for LatticePolygon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LatticePolygon", 2)?;
        st.serialize_field("kind", &self.kind())?;
        st.serialize_field("vertices", &self.vertices)?;
        st.end()
    }
}

/// Convex hull by Andrew's monotone chain. Collinear boundary points are
/// dropped, so the result is strictly convex.
///
/// # Panics
/// If `points` is empty.
pub fn convex_hull<I>(points: I) -> LatticePolygon
where
    I: IntoIterator<Item = LatticeVector>,
{
    let mut pts: Vec<LatticeVector> = points.into_iter().collect();
    assert!(!pts.is_empty(), "convex hull of an empty point set");
    pts.sort_unstable();
    pts.dedup();
    if pts.len() == 1 {
        return LatticePolygon { vertices: pts };
    }

    let turn = |o: LatticeVector, a: LatticeVector, b: LatticeVector| det2(a - o, b - o);
    let mut hull: Vec<LatticeVector> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    LatticePolygon { vertices: hull }
}

/// Orders primitive directions by angle in `[0, 2π)` measured from `(1, 0)`.
pub fn angular_cmp(a: LatticeVector, b: LatticeVector) -> Ordering {
    let half = |v: LatticeVector| if v.y > 0 || (v.y == 0 && v.x > 0) { 0 } else { 1 };
    half(a)
        .cmp(&half(b))
        .then_with(|| 0.cmp(&det2(a, b)))
}
