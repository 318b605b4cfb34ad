//! Dimension counts for maps from a general curve of genus `g`.
//!
//! All formulas are plain integer arithmetic. [`bn_verdict`] combines them
//! into a decision about a family of maps `C → S` whose general member is an
//! `m`-fold cover of an image curve of anti-canonical degree `image_degree`.

use serde::Serialize;

use crate::classify::{classify, Classification};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::newton::LaurentCurve;

/// Brill–Noether number `g - (r+1)(g-d+r)`.
pub fn rho(g: i64, r: i64, d: i64) -> i64 {
    g - (r + 1) * (g - d + r)
}

/// Expected dimension `(r+1)d + r(1-g)` of degree-`d` maps to `P^r`.
pub fn expected_dim_maps_projective(g: i64, r: i64, d: i64) -> i64 {
    (r + 1) * d + r * (1 - g)
}

/// Expected dimension `β·(-K_S) + 2(1-g)` of maps to a surface.
pub fn expected_dim_maps_surface(g: i64, anticanonical_degree: i64) -> i64 {
    anticanonical_degree + 2 * (1 - g)
}

/// Dimension `β·(-K_S) + g - 1` of the Severi variety of genus-`g` curves.
pub fn severi_dim(g: i64, anticanonical_degree: i64) -> i64 {
    anticanonical_degree + g - 1
}

/// Expected dimension `β·(-K_Y) + r(1-g)` of maps to a blow-up of `P^r`
/// along a linear space.
pub fn farkas_expected_dim(g: i64, r: i64, anticanonical_degree: i64) -> i64 {
    anticanonical_degree + r * (1 - g)
}

/// Dimension `(2m - g + 1) + (image_degree - 1)` of the family of maps that
/// factor through a degree-`m` map to `P¹` followed by a rational curve of
/// the given degree.
pub fn multiple_cover_family_dim(g: i64, m: i64, image_degree: i64) -> i64 {
    (2 * m - g + 1) + (image_degree - 1)
}

/// `g - (m-1)(image_degree - 2)`: how far that family exceeds the expected
/// dimension `m·image_degree + 2 - 2g`.
pub fn multiple_cover_excess(g: i64, m: i64, image_degree: i64) -> i64 {
    g - (m - 1) * (image_degree - 2)
}

/// Geometric genus of the image curve of a multiple cover.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ImageGenus {
    #[default]
    Rational,
    Elliptic,
}

impl TryFrom<u8> for ImageGenus {
    type Error = Error;
    fn try_from(g: u8) -> Result<Self> {
        match g {
            0 => Ok(ImageGenus::Rational),
            1 => Ok(ImageGenus::Elliptic),
            _ => Err(Error::Domain(format!("image genus branch must be 0 or 1, got {g}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// Birational onto an image of degree at least 4: generically smooth of
    /// the expected dimension.
    ExpectedDimension { generically_smooth: bool },
    /// A general curve has no covers of this kind.
    NoSuchCovers { reason: String },
    /// The multiple covers fill a family larger than the expected dimension.
    ObstructedComponent {
        family_dim: i64,
        excess: i64,
        witness: Option<Classification>,
    },
    /// `image_degree = 4`, `g = 2m - 2`: the covers form a component of the
    /// expected dimension, isomorphic to a 6-dimensional space of maps.
    BoundarySpecialCase { family_dim: i64 },
    /// The multiple covers are too few to form a component.
    NotAComponent { family_dim: i64 },
    /// Birational onto an image of degree at most 3. Nothing is claimed.
    LowDegreeBirational { witness: Option<Classification> },
}

impl Outcome {
    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::ExpectedDimension { .. } => "expected_dimension",
            Outcome::NoSuchCovers { .. } => "no_such_covers",
            Outcome::ObstructedComponent { .. } => "obstructed_component",
            Outcome::BoundarySpecialCase { .. } => "boundary_special_case",
            Outcome::NotAComponent { .. } => "not_a_component",
            Outcome::LowDegreeBirational { .. } => "low_degree_birational",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub genus: i64,
    pub cover_degree: i64,
    pub image_degree: i64,
    pub image_genus: ImageGenus,
    /// `m·image_degree + 2 - 2g`.
    pub expected_dim: i64,
    pub outcome: Outcome,
}

/// Decides what the dimension count says about maps of genus `g` that are
/// `m`-fold covers of an image of anti-canonical degree `image_degree`.
///
/// `witness` is the classification of the image curve, when known; it is
/// attached to the low-degree outcomes. The image genus selects the branch
/// for `m >= 2` and is ignored for `m = 1`.
///
/// When the genus-0 branch has zero excess outside the boundary case (which
/// only happens for image degree 2 or 3) the outcome is `NotAComponent` with
/// `family_dim == expected_dim`.
pub fn bn_verdict(
    g: i64,
    m: i64,
    image_degree: i64,
    image_genus: ImageGenus,
    witness: Option<Classification>,
) -> Result<Verdict> {
    if g < 0 {
        return Err(Error::Domain(format!("genus {g} is negative")));
    }
    if m < 1 {
        return Err(Error::Domain(format!("cover degree {m} must be at least 1")));
    }
    if image_degree < 2 {
        return Err(Error::Domain(format!(
            "image degree {image_degree} is below 2, impossible for a curve meeting the torus"
        )));
    }
    if let Some(w) = &witness {
        if w.degree() as i64 != image_degree {
            return Err(Error::Domain(format!(
                "classification has degree {}, image degree is {image_degree}",
                w.degree()
            )));
        }
    }
    let expected_dim = m * image_degree + 2 - 2 * g;
    let low_degree_witness = witness.filter(|w| w.degree() <= 3);

    let outcome = if m == 1 {
        if image_degree >= 4 {
            Outcome::ExpectedDimension {
                generically_smooth: true,
            }
        } else {
            Outcome::LowDegreeBirational {
                witness: low_degree_witness,
            }
        }
    } else {
        match image_genus {
            ImageGenus::Elliptic if g == 1 => Outcome::NotAComponent {
                family_dim: image_degree,
            },
            ImageGenus::Elliptic => Outcome::NoSuchCovers {
                reason: format!(
                    "a general curve of genus {g} has no cover of degree {m} onto a genus-1 curve"
                ),
            },
            ImageGenus::Rational => {
                let r = rho(g, 1, m);
                if r < 0 {
                    Outcome::NoSuchCovers {
                        reason: format!("rho({g}, 1, {m}) = {r} < 0"),
                    }
                } else {
                    let family_dim = multiple_cover_family_dim(g, m, image_degree);
                    let excess = multiple_cover_excess(g, m, image_degree);
                    if excess > 0 {
                        Outcome::ObstructedComponent {
                            family_dim,
                            excess,
                            witness: low_degree_witness,
                        }
                    } else if excess == 0 && image_degree == 4 && g == 2 * m - 2 {
                        Outcome::BoundarySpecialCase { family_dim }
                    } else {
                        Outcome::NotAComponent { family_dim }
                    }
                }
            }
        }
    };

    Ok(Verdict {
        genus: g,
        cover_degree: m,
        image_degree,
        image_genus,
        expected_dim,
        outcome,
    })
}

/// [`bn_verdict`] with the image degree and witness read off a curve on a
/// smooth toric surface.
pub fn bn_verdict_for_curve(
    fan: &Fan,
    curve: &LaurentCurve,
    g: i64,
    m: i64,
    image_genus: ImageGenus,
) -> Result<Verdict> {
    let classification = classify(fan, curve)?;
    let degree = classification.degree() as i64;
    bn_verdict(g, m, degree, image_genus, Some(classification))
}
