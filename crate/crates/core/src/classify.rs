//! Curves of anti-canonical degree at most three.
//!
//! The degree of a torus curve is the lattice perimeter of its circumscribed
//! polygon, and every such polygon has at least two edges of positive length.
//! So a degree-2 curve has two opposite unit edges, which forces two opposite
//! rays and a projection to `P¹` contracting the curve. A degree-3 curve has
//! a unit-edge triangle, whose three rays sum to zero and span a fake
//! projective plane in which the curve has the primitive class.
//!
//! [`classify`] returns the case together with the rays that certify it, and
//! [`line_witness_scan`] lists every opposite pair and zero-sum triple of a
//! fan under which the curve degenerates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::{FakePlane, Fan};
use crate::lattice::LatticeVector;
use crate::newton::{circumscribed_polygon, CircumscribedPolygon, LaurentCurve};

/// One unit-length edge of the circumscribed polygon.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UnitEdge {
    pub ray_index: usize,
    pub ray: LatticeVector,
    pub start: LatticeVector,
    pub end: LatticeVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Classification {
    /// Anti-canonical degree at least 4.
    HighDegree { degree: u64 },
    /// Degree 2: the curve is a fibre of the projection killing `n_i = -n_j`.
    FiberOfProjection {
        ray_pair: [usize; 2],
        rays: [LatticeVector; 2],
        /// Generator of the kernel of `N → N / Z n_i`.
        contracted_direction: LatticeVector,
    },
    /// Degree 3: deleting all other rays maps the curve into the primitive
    /// linear system of a fake projective plane.
    MapsToFakePlane {
        ray_triple: [usize; 3],
        fake_plane: FakePlane,
        primitive_certificate: [UnitEdge; 3],
    },
}

impl Classification {
    pub fn degree(&self) -> u64 {
        match self {
            Classification::HighDegree { degree } => *degree,
            Classification::FiberOfProjection { .. } => 2,
            Classification::MapsToFakePlane { .. } => 3,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Classification::HighDegree { .. } => "high_degree",
            Classification::FiberOfProjection { .. } => "fiber_of_projection",
            Classification::MapsToFakePlane { .. } => "maps_to_fake_plane",
        }
    }
}

fn contradiction(msg: impl Into<String>) -> Error {
    Error::InternalContradiction(msg.into())
}

fn unit_edges(poly: &CircumscribedPolygon) -> Result<Vec<UnitEdge>> {
    poly.positive_edges()
        .map(|e| {
            if e.delta != Some(1) {
                return Err(contradiction(format!(
                    "edge on ray {} has length {:?}, expected 1",
                    e.ray, e.delta
                )));
            }
            Ok(UnitEdge {
                ray_index: e.ray_index,
                ray: e.ray,
                start: e.start.to_lattice().ok_or(Error::Overflow)?,
                end: e.end.to_lattice().ok_or(Error::Overflow)?,
            })
        })
        .collect()
}

/// Sorts the curve into the high-degree, fibre, or fake-plane case.
///
/// The fan must be smooth. The curve is assumed integral; that is not
/// checked.
pub fn classify(fan: &Fan, curve: &LaurentCurve) -> Result<Classification> {
    if !fan.is_smooth() {
        return Err(Error::SingularFan);
    }
    if curve.len() < 2 {
        return Err(Error::TooFewTerms(curve.len()));
    }
    let poly = circumscribed_polygon(fan, curve);
    let deltas: Vec<u64> = poly
        .edges
        .iter()
        .map(|e| e.delta.ok_or(Error::Overflow))
        .collect::<Result<_>>()?;
    let degree: u64 = deltas.iter().sum();
    let positive = deltas.iter().filter(|&&d| d > 0).count();

    // Closed lattice polygons with at least two points have two or more
    // nonzero edges, and exactly two only if they are opposite and equal.
    if positive < 2 {
        return Err(contradiction(format!("only {positive} edges of positive length")));
    }
    if positive == 2 && !degree.is_multiple_of(2) {
        return Err(contradiction(format!("two-edge polygon with odd perimeter {degree}")));
    }

    match degree {
        0 | 1 => Err(contradiction(format!("anti-canonical degree {degree} is impossible"))),
        2 => {
            let edges = unit_edges(&poly)?;
            let [a, b] = edges.as_slice() else {
                return Err(contradiction("degree 2 without exactly two edges"));
            };
            if !(a.ray + b.ray).is_zero() {
                return Err(contradiction(format!(
                    "degree-2 edges lie on non-opposite rays {} and {}",
                    a.ray, b.ray
                )));
            }
            if !curve.is_contracted_by_projection(a.ray) {
                return Err(contradiction("degree-2 curve is not a fibre"));
            }
            Ok(Classification::FiberOfProjection {
                ray_pair: [a.ray_index, b.ray_index],
                rays: [a.ray, b.ray],
                contracted_direction: a.ray,
            })
        }
        3 => {
            let edges = unit_edges(&poly)?;
            let [a, b, c] = <[UnitEdge; 3]>::try_from(edges)
                .map_err(|_| contradiction("degree 3 without a triangle"))?;
            let fake_plane = FakePlane::new(a.ray, b.ray, c.ray).map_err(|e| {
                contradiction(format!("degree-3 rays do not form a fake plane: {e}"))
            })?;
            Ok(Classification::MapsToFakePlane {
                ray_triple: [a.ray_index, b.ray_index, c.ray_index],
                fake_plane,
                primitive_certificate: [a, b, c],
            })
        }
        _ => Ok(Classification::HighDegree { degree }),
    }
}

/// A toric morphism out of the surface under which the curve degenerates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The projection contracting `n_i = -n_j` maps the curve to a point.
    Projection {
        ray_pair: [usize; 2],
        rays: [LatticeVector; 2],
    },
    /// With respect to the three rays alone, the circumscribed polygon is a
    /// lattice triangle with unit edges.
    FakePlane {
        ray_triple: [usize; 3],
        fake_plane: FakePlane,
        vertices: [LatticeVector; 3],
    },
}

/// Vertices of the unit-edge triangle that `curve` circumscribes with respect
/// to the rays of `plane`, or `None` if the polygon is anything else.
pub fn fake_plane_triangle(plane: &FakePlane, curve: &LaurentCurve) -> Option<[LatticeVector; 3]> {
    let poly = circumscribed_polygon(&plane.fan(), curve);
    if poly.edges.iter().all(|e| e.delta == Some(1)) {
        let mu: Vec<LatticeVector> = poly.mu.iter().filter_map(|p| p.to_lattice()).collect();
        mu.try_into().ok()
    } else {
        None
    }
}

/// Every opposite pair and zero-sum triple of the fan under which the curve
/// degenerates. An empty list means no toric morphism of either kind maps the
/// curve to a fibre or a primitive curve.
pub fn line_witness_scan(fan: &Fan, curve: &LaurentCurve) -> Result<Vec<Witness>> {
    if !fan.is_smooth() {
        return Err(Error::SingularFan);
    }
    if curve.len() < 2 {
        return Err(Error::TooFewTerms(curve.len()));
    }
    let mut out = Vec::new();
    for (i, j) in fan.opposite_ray_pairs() {
        if curve.is_contracted_by_projection(fan.ray(i)) {
            out.push(Witness::Projection {
                ray_pair: [i, j],
                rays: [fan.ray(i), fan.ray(j)],
            });
        }
    }
    for (ray_triple, fake_plane) in fan.zero_sum_triples() {
        if let Some(vertices) = fake_plane_triangle(&fake_plane, curve) {
            out.push(Witness::FakePlane {
                ray_triple,
                fake_plane,
                vertices,
            });
        }
    }
    Ok(out)
}

/// Whether the curve is a witness for a singular fake-plane triple of the fan
/// and for its negation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientationNote {
    pub triple: [LatticeVector; 3],
    pub triple_is_witness: bool,
    pub negated: [LatticeVector; 3],
    pub negated_is_witness: bool,
}

/// Singular zero-sum triples whose witness status flips under `n ↦ -n`.
/// Inner and outer normal conventions disagree exactly on these.
pub fn orientation_notes(fan: &Fan, curve: &LaurentCurve) -> Vec<OrientationNote> {
    fan.zero_sum_triples()
        .into_iter()
        .filter(|(_, plane)| !plane.is_projective_plane)
        .filter_map(|(_, plane)| {
            let negated = plane.negated();
            let here = fake_plane_triangle(&plane, curve).is_some();
            let there = fake_plane_triangle(&negated, curve).is_some();
            (here != there).then_some(OrientationNote {
                triple: plane.rays,
                triple_is_witness: here,
                negated: negated.rays,
                negated_is_witness: there,
            })
        })
        .collect()
}
