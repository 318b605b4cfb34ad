//! Curves in the torus and their boundary intersection numbers.
//!
//! A curve `C' ⊂ S` meeting the open torus is cut out there by a Laurent
//! polynomial `F = Σ a_m χ^m`. Only the support `{m : a_m ≠ 0}` matters for
//! intersection numbers; the coefficients are kept for evaluation.
//!
//! For each ray `n_i` of the fan, the support line `ℓ_i` is the level set of
//! `m ↦ <m, n_i>` through the support points where that pairing is smallest.
//! Consecutive lines meet in the points `μ_i = ℓ_i ∩ ℓ_{i+1}`, which are the
//! vertices of the circumscribed polygon. On a smooth surface the
//! intersection number `C' · D_i` is the lattice length of the edge
//! `[μ_{i-1}, μ_i]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{
    convex_hull, det2, lattice_distance, line_intersection, LatticePolygon, LatticeVector, Line,
    RationalPoint,
};

/// A Laurent polynomial with at least two terms and no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentCurve {
    terms: BTreeMap<LatticeVector, BigRational>,
}

/// Which quantity [`LaurentCurve::evaluate`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Value,
    /// `∂F/∂x`
    Dx,
    /// `∂F/∂y`
    Dy,
}

impl LaurentCurve {
    pub fn new<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LatticeVector, BigRational)>,
    {
        let mut map = BTreeMap::new();
        for (exp, coeff) in terms {
            if coeff.is_zero() {
                return Err(Error::ZeroCoefficient(exp));
            }
            if map.insert(exp, coeff).is_some() {
                return Err(Error::DuplicateExponent(exp));
            }
        }
        if map.len() < 2 {
            return Err(Error::TooFewTerms(map.len()));
        }
        Ok(Self { terms: map })
    }

    /// All coefficients equal to one.
    pub fn from_support<I>(support: I) -> Result<Self>
    where
        I: IntoIterator<Item = LatticeVector>,
    {
        Self::new(support.into_iter().map(|m| (m, BigRational::one())))
    }

    /// Integer coefficients.
    pub fn from_integer_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LatticeVector, i64)>,
    {
        Self::new(
            terms
                .into_iter()
                .map(|(m, a)| (m, BigRational::from(BigInt::from(a)))),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (LatticeVector, &BigRational)> {
        self.terms.iter().map(|(&m, a)| (m, a))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exponents with a nonzero coefficient, in lexicographic order.
    pub fn support(&self) -> Vec<LatticeVector> {
        self.terms.keys().copied().collect()
    }

    pub fn newton_polygon(&self) -> LatticePolygon {
        convex_hull(self.terms.keys().copied())
    }

    /// Interior lattice points of the Newton polygon.
    pub fn arithmetic_genus(&self) -> u64 {
        self.newton_polygon().interior_lattice_points()
    }

    /// `F · χ^shift`.
    pub fn translate(&self, shift: LatticeVector) -> LaurentCurve {
        LaurentCurve {
            terms: self
                .terms
                .iter()
                .map(|(&m, a)| (m + shift, a.clone()))
                .collect(),
        }
    }

    /// Applies a linear map to every exponent. The map must be injective on
    /// the support, which holds for any invertible matrix.
    pub fn map_exponents(&self, f: impl Fn(LatticeVector) -> LatticeVector) -> LaurentCurve {
        LaurentCurve {
            terms: self.terms.iter().map(|(&m, a)| (f(m), a.clone())).collect(),
        }
    }

    pub fn evaluate(&self, point: &RationalPoint, what: Evaluation) -> Result<BigRational> {
        if point.x.is_zero() || point.y.is_zero() {
            return Err(Error::ZeroCoordinate);
        }
        let mut total = BigRational::zero();
        for (&m, a) in &self.terms {
            let (ex, ey, factor) = match what {
                Evaluation::Value => (m.x, m.y, BigInt::one()),
                Evaluation::Dx => (m.x - 1, m.y, BigInt::from(m.x)),
                Evaluation::Dy => (m.x, m.y - 1, BigInt::from(m.y)),
            };
            if factor.is_zero() {
                continue;
            }
            total += a * BigRational::from(factor) * pow(&point.x, ex) * pow(&point.y, ey);
        }
        Ok(total)
    }

    /// `F`, `∂F/∂x` and `∂F/∂y` all vanish at `point`.
    pub fn is_singular_at(&self, point: &RationalPoint) -> Result<bool> {
        for what in [Evaluation::Value, Evaluation::Dx, Evaluation::Dy] {
            if !self.evaluate(point, what)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The pairing with `ray` is constant on the support, so the curve lies
    /// in a fibre of the projection `N → N / Z·ray`.
    pub fn is_contracted_by_projection(&self, ray: LatticeVector) -> bool {
        let mut values = self.terms.keys().map(|m| m.pairing(ray));
        let first = values.next();
        values.all(|v| Some(v) == first)
    }
}

fn pow(base: &BigRational, exp: i64) -> BigRational {
    let mut result = BigRational::one();
    let mut b = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    result
}

impl fmt::Display for LaurentCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Highest total degree first, which reads naturally for polynomials.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| std::cmp::Reverse((m.x + m.y, m.x)));
        for (k, (m, a)) in terms.into_iter().enumerate() {
            let negative = a.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = a.abs();
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_zero() {
                factors.push(abs.to_string());
            }
            for (name, e) in [("x", m.x), ("y", m.y)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for LaurentCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct Term {
            exp: LatticeVector,
            coeff: String,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(&exp, a)| Term {
                exp,
                coeff: a.to_string(),
            })
            .collect();
        let mut st = s.serialize_struct("LaurentCurve", 1)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// The supporting line of the curve's support for one ray.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportLine {
    pub ray_index: usize,
    pub line: Line,
    /// Minimum of `<m, n_i>` over the support.
    pub min_value: i128,
    /// Support points attaining the minimum, lexicographically sorted.
    pub argmin: Vec<LatticeVector>,
}

pub fn support_lines(fan: &Fan, curve: &LaurentCurve) -> Vec<SupportLine> {
    let support = curve.support();
    fan.rays()
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let min_value = support
                .iter()
                .map(|m| m.pairing(n))
                .min()
                .expect("a curve has at least two terms");
            let argmin = support
                .iter()
                .copied()
                .filter(|m| m.pairing(n) == min_value)
                .collect();
            SupportLine {
                ray_index: i,
                line: Line::new(n, min_value).expect("fan rays are primitive"),
                min_value,
                argmin,
            }
        })
        .collect()
}

/// Edge `e_i ⊂ ℓ_i`, directed from `μ_{i-1}` to `μ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircumscribedEdge {
    pub ray_index: usize,
    pub ray: LatticeVector,
    pub line: Line,
    pub start: RationalPoint,
    pub end: RationalPoint,
    /// Support point on the edge closest to `start`.
    pub nu_minus: LatticeVector,
    /// Support point on the edge closest to `end`.
    pub nu_plus: LatticeVector,
    /// Lattice length of the edge; `None` when an endpoint is not a lattice
    /// point (singular fans only).
    pub delta: Option<u64>,
}

impl CircumscribedEdge {
    /// `end - start` when both endpoints are lattice points.
    pub fn vector(&self) -> Option<LatticeVector> {
        Some(self.end.to_lattice()? - self.start.to_lattice()?)
    }
}

/// The polygon with vertices `μ_i = ℓ_i ∩ ℓ_{i+1}`, possibly degenerate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircumscribedPolygon {
    /// `mu[i] = ℓ_i ∩ ℓ_{i+1}`.
    pub mu: Vec<RationalPoint>,
    /// `edges[i]` runs from `mu[i-1]` to `mu[i]` along `ℓ_i`.
    pub edges: Vec<CircumscribedEdge>,
}

impl CircumscribedPolygon {
    pub fn all_lattice(&self) -> bool {
        self.mu.iter().all(RationalPoint::is_lattice)
    }

    /// Distinct vertices, in cyclic order of first appearance.
    pub fn distinct_vertices(&self) -> Vec<RationalPoint> {
        let mut out: Vec<RationalPoint> = Vec::new();
        for p in &self.mu {
            if !out.contains(p) {
                out.push(p.clone());
            }
        }
        out
    }

    /// Edges of positive length.
    pub fn positive_edges(&self) -> impl Iterator<Item = &CircumscribedEdge> {
        self.edges.iter().filter(|e| e.start != e.end)
    }
}

/// Builds `P̄(F)`. Works for singular fans too, where some `μ_i` may be
/// rational; their edges then carry no lattice length.
pub fn circumscribed_polygon(fan: &Fan, curve: &LaurentCurve) -> CircumscribedPolygon {
    let lines = support_lines(fan, curve);
    let c = lines.len();
    let mu: Vec<RationalPoint> = (0..c)
        .map(|i| {
            line_intersection(&lines[i].line, &lines[(i + 1) % c].line)
                .expect("consecutive rays of a complete fan are not parallel")
        })
        .collect();

    let edges = lines
        .iter()
        .enumerate()
        .map(|(i, sl)| {
            let n = fan.ray(i);
            let start = mu[(i + c - 1) % c].clone();
            let end = mu[i].clone();
            // det2(m, n) increases along the edge direction.
            let along = |m: &LatticeVector| det2(*m, n);
            let nu_minus = *sl.argmin.iter().min_by_key(|m| along(m)).unwrap();
            let nu_plus = *sl.argmin.iter().max_by_key(|m| along(m)).unwrap();
            let delta = match (start.to_lattice(), end.to_lattice()) {
                (Some(a), Some(b)) => Some(lattice_distance(a, b)),
                _ => None,
            };
            CircumscribedEdge {
                ray_index: i,
                ray: n,
                line: sl.line,
                start,
                end,
                nu_minus,
                nu_plus,
                delta,
            }
        })
        .collect();
    CircumscribedPolygon { mu, edges }
}

fn require_smooth(fan: &Fan) -> Result<()> {
    if fan.is_smooth() {
        Ok(())
    } else {
        Err(Error::SingularFan)
    }
}

/// Lattice lengths of the edges of `P̄(F)`, i.e. `C' · D_i` for every ray.
pub fn boundary_intersections(fan: &Fan, curve: &LaurentCurve) -> Result<Vec<u64>> {
    require_smooth(fan)?;
    circumscribed_polygon(fan, curve)
        .edges
        .iter()
        .map(|e| e.delta.ok_or(Error::Overflow))
        .collect()
}

/// `C' · (-K_S)`: the lattice perimeter of `P̄(F)`.
pub fn anticanonical_degree(fan: &Fan, curve: &LaurentCurve) -> Result<u64> {
    Ok(boundary_intersections(fan, curve)?.iter().sum())
}

/// Local contributions to `C' · D_i` from the two affine charts meeting
/// `D_i`, and their overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChartDecomposition {
    /// `δ(ν_i^-, μ_i)`: intersection inside the chart of `σ_i`.
    pub a: u64,
    /// `δ(μ_{i-1}, ν_i^+)`: intersection inside the chart of `σ_{i-1}`.
    pub b: u64,
    /// `δ(ν_i^-, ν_i^+)`: intersection inside the overlap.
    pub c: u64,
}

impl ChartDecomposition {
    pub fn total(&self) -> u64 {
        self.a + self.b - self.c
    }
}

pub fn chart_decomposition(
    fan: &Fan,
    curve: &LaurentCurve,
    ray_index: usize,
) -> Result<ChartDecomposition> {
    require_smooth(fan)?;
    if ray_index >= fan.len() {
        return Err(Error::IndexOutOfRange {
            index: ray_index,
            len: fan.len(),
        });
    }
    let poly = circumscribed_polygon(fan, curve);
    let edge = &poly.edges[ray_index];
    let start = edge.start.to_lattice().ok_or(Error::Overflow)?;
    let end = edge.end.to_lattice().ok_or(Error::Overflow)?;
    Ok(ChartDecomposition {
        a: lattice_distance(edge.nu_minus, end),
        b: lattice_distance(start, edge.nu_plus),
        c: lattice_distance(edge.nu_minus, edge.nu_plus),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Preset;

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    fn curve(support: &[(i64, i64)]) -> LaurentCurve {
        LaurentCurve::from_support(support.iter().map(|&p| p.into())).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn lattice_mu(p: &CircumscribedPolygon) -> Vec<LatticeVector> {
        p.mu.iter().map(|m| m.to_lattice().unwrap()).collect()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(LaurentCurve::from_support([v(0, 0)]), Err(Error::TooFewTerms(1)));
        assert_eq!(
            LaurentCurve::from_support([v(0, 0), v(0, 0)]),
            Err(Error::DuplicateExponent(v(0, 0)))
        );
        assert_eq!(
            LaurentCurve::new([(v(0, 0), q(1)), (v(1, 0), q(0))]),
            Err(Error::ZeroCoefficient(v(1, 0)))
        );
    }

    #[test]
    fn newton_polygon_examples() {
        assert_eq!(curve(&[(0, 0), (1, 0), (0, 1), (1, 1)]).newton_polygon().vertices().len(), 4);
        let cubic = curve(&[(2, 1), (1, 2), (1, 1), (0, 0)]);
        assert_eq!(cubic.newton_polygon().vertices(), &[v(0, 0), v(2, 1), v(1, 2)]);
        let seg = curve(&[(0, 0), (1, 0)]).newton_polygon();
        assert_eq!(seg.kind(), crate::lattice::PolygonKind::Segment);
    }

    #[test]
    fn support_lines_on_p2() {
        let p2 = Fan::preset(Preset::P2).unwrap();
        let lines = support_lines(&p2, &curve(&[(0, 0), (1, 0), (0, 1), (1, 1)]));
        let levels: Vec<(LatticeVector, i128)> =
            lines.iter().map(|l| (l.line.normal(), l.line.level())).collect();
        // x = 0, y = 0, x + y = 2
        assert_eq!(levels, vec![(v(1, 0), 0), (v(0, 1), 0), (v(-1, -1), -2)]);
        assert_eq!(lines[2].argmin, vec![v(1, 1)]);
    }

    #[test]
    fn support_line_of_a_segment() {
        let p1 = Fan::preset(Preset::P1xP1).unwrap();
        let lines = support_lines(&p1, &curve(&[(0, 0), (1, 0)]));
        assert_eq!(lines[0].min_value, 0);
        assert_eq!(lines[0].argmin, vec![v(0, 0)]);
    }

    #[test]
    fn circumscribed_polygon_on_p2() {
        let p2 = Fan::preset(Preset::P2).unwrap();
        let poly = circumscribed_polygon(&p2, &curve(&[(0, 0), (1, 0), (0, 1), (1, 1)]));
        assert_eq!(lattice_mu(&poly), vec![v(0, 0), v(2, 0), v(0, 2)]);
        let deltas: Vec<_> = poly.edges.iter().map(|e| e.delta).collect();
        assert_eq!(deltas, vec![Some(2); 3]);
    }

    #[test]
    fn circumscribed_polygon_degenerates_for_a_ruling() {
        let p1 = Fan::preset(Preset::P1xP1).unwrap();
        let poly = circumscribed_polygon(&p1, &curve(&[(0, 0), (1, 0)]));
        assert_eq!(poly.distinct_vertices().len(), 2);
        let deltas = boundary_intersections(&p1, &curve(&[(0, 0), (1, 0)])).unwrap();
        // rays (1,0), (0,1), (-1,0), (0,-1)
        assert_eq!(deltas, vec![0, 1, 0, 1]);
    }

    #[test]
    fn circumscribed_polygon_on_bl3() {
        let bl3 = Fan::preset(Preset::Bl3P2).unwrap();
        let f = curve(&[(1, 0), (0, 1), (1, 1)]);
        let poly = circumscribed_polygon(&bl3, &f);
        assert_eq!(
            lattice_mu(&poly),
            vec![v(0, 1), v(1, 0), v(1, 0), v(1, 1), v(1, 1), v(0, 1)]
        );
        assert_eq!(boundary_intersections(&bl3, &f).unwrap(), vec![0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn singular_fan_is_refused() {
        let fake = Fan::preset(Preset::FakePlane(v(2, -1), v(-1, 2))).unwrap();
        let f = curve(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(boundary_intersections(&fake, &f), Err(Error::SingularFan));
        assert_eq!(anticanonical_degree(&fake, &f), Err(Error::SingularFan));
        assert_eq!(chart_decomposition(&fake, &f, 0), Err(Error::SingularFan));
        // the diagnostic polygon is still available, with rational vertices
        let poly = circumscribed_polygon(&fake, &curve(&[(0, 0), (1, 0)]));
        assert!(!poly.all_lattice());
        assert!(poly.edges.iter().any(|e| e.delta.is_none()));
    }

    #[test]
    fn anticanonical_degree_examples() {
        let p2 = Fan::preset(Preset::P2).unwrap();
        assert_eq!(anticanonical_degree(&p2, &curve(&[(0, 0), (1, 0), (0, 1), (1, 1)])), Ok(6));

        let bl = Fan::new([v(1, 0), v(1, 1), v(0, 1), v(-1, -1)]).unwrap();
        let conic = curve(&[(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]);
        assert_eq!(boundary_intersections(&bl, &conic).unwrap(), vec![1, 1, 1, 2]);

        let p1 = Fan::preset(Preset::P1xP1).unwrap();
        assert_eq!(anticanonical_degree(&p1, &curve(&[(0, 0), (1, 0)])), Ok(2));
    }

    #[test]
    fn chart_decomposition_examples() {
        let p2 = Fan::preset(Preset::P2).unwrap();
        let f = curve(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        let d = chart_decomposition(&p2, &f, 0).unwrap();
        assert_eq!(d, ChartDecomposition { a: 1, b: 2, c: 1 });
        assert_eq!(d.total(), 2);

        let bl3 = Fan::preset(Preset::Bl3P2).unwrap();
        let g = curve(&[(1, 0), (0, 1), (1, 1)]);
        // ray (1,0): degenerate edge
        assert_eq!(chart_decomposition(&bl3, &g, 0).unwrap(), ChartDecomposition { a: 0, b: 0, c: 0 });
        let i = bl3.index_of(v(1, 1)).unwrap();
        assert_eq!(chart_decomposition(&bl3, &g, i).unwrap(), ChartDecomposition { a: 1, b: 1, c: 1 });
        assert!(chart_decomposition(&bl3, &g, 6).is_err());
    }

    #[test]
    fn arithmetic_genus_examples() {
        assert_eq!(curve(&[(2, 1), (1, 2), (1, 1), (0, 0)]).arithmetic_genus(), 1);
        assert_eq!(curve(&[(0, 0), (1, 0), (0, 1)]).arithmetic_genus(), 0);
        let cubic: Vec<(i64, i64)> = (0..=3)
            .flat_map(|i| (0..=3 - i).map(move |j| (i, j)))
            .collect();
        assert_eq!(curve(&cubic).arithmetic_genus(), 1);
    }

    #[test]
    fn evaluation_and_singularity() {
        let one_one = RationalPoint::new(q(1), q(1));
        let nodal = LaurentCurve::from_integer_terms([
            (v(2, 1), 1),
            (v(1, 2), 1),
            (v(1, 1), -3),
            (v(0, 0), 1),
        ])
        .unwrap();
        for what in [Evaluation::Value, Evaluation::Dx, Evaluation::Dy] {
            assert!(nodal.evaluate(&one_one, what).unwrap().is_zero());
        }
        assert!(nodal.is_singular_at(&one_one).unwrap());

        let smooth = LaurentCurve::from_integer_terms([
            (v(2, 1), 1),
            (v(1, 2), 1),
            (v(1, 1), -1),
            (v(0, 0), 1),
        ])
        .unwrap();
        assert_eq!(smooth.evaluate(&one_one, Evaluation::Value).unwrap(), q(2));
        assert!(!smooth.is_singular_at(&one_one).unwrap());

        let line = curve(&[(0, 0), (1, 0)]);
        assert!(line
            .evaluate(&RationalPoint::new(q(-1), q(5)), Evaluation::Value)
            .unwrap()
            .is_zero());
        assert_eq!(
            line.evaluate(&RationalPoint::new(q(0), q(5)), Evaluation::Value),
            Err(Error::ZeroCoordinate)
        );
    }

    #[test]
    fn negative_exponents_evaluate() {
        // x^-1 + y^-2 at (1/2, 3) = 2 + 1/9
        let f = curve(&[(-1, 0), (0, -2)]);
        let p = RationalPoint::new(BigRational::new(1.into(), 2.into()), q(3));
        assert_eq!(
            f.evaluate(&p, Evaluation::Value).unwrap(),
            BigRational::new(19.into(), 9.into())
        );
        // d/dx x^-1 = -x^-2 = -4
        assert_eq!(f.evaluate(&p, Evaluation::Dx).unwrap(), q(-4));
    }

    #[test]
    fn projection_contraction() {
        let line = curve(&[(0, 0), (1, 0)]);
        assert!(line.is_contracted_by_projection(v(0, 1)));
        assert!(!line.is_contracted_by_projection(v(1, 0)));
        let square = curve(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        for r in [v(1, 0), v(0, 1), v(-1, 0), v(0, -1)] {
            assert!(!square.is_contracted_by_projection(r));
        }
    }

    #[test]
    fn display() {
        let f = LaurentCurve::from_integer_terms([
            (v(2, 1), 1),
            (v(1, 2), 1),
            (v(1, 1), -3),
            (v(0, 0), 1),
        ])
        .unwrap();
        assert_eq!(f.to_string(), "x^2*y + x*y^2 - 3*x*y + 1");
    }
}
