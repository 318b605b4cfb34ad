//! JSON input documents.
//!
//! ```json
//! {
//!   "fan": {"preset": "Bl3P2"},
//!   "curve": {"terms": [{"exp": [1, 0]}, {"exp": [0, 1]}, {"exp": [1, 1], "coeff": "-2/3"}]},
//!   "genus": 2,
//!   "cover_degree": 2,
//!   "image_genus_branch": 0
//! }
//! ```
//!
//! A fan is either `{"rays": [[x, y], ...]}` or a preset:
//! `{"preset": "P2" | "P1xP1" | "Bl3P2"}`, `{"preset": "Hirzebruch", "a": 2}` or
//! `{"preset": "FakePlane", "n1": [2, -1], "n2": [-1, 2]}`.

use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brill_noether::ImageGenus;
use crate::error::Error;
use crate::fan::{Fan, Preset};
use crate::lattice::LatticeVector;
use crate::newton::LaurentCurve;

#[derive(Debug, Error)]
pub enum DocumentError {
    /// Malformed JSON or a document that does not fit the schema.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed, but the data violates a mathematical precondition.
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        DocumentError::Parse(e.to_string())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<LatticeVector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n1: Option<LatticeVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<LatticeVector>,
}

impl FanSpec {
    pub fn from_fan(fan: &Fan) -> Self {
        FanSpec {
            rays: Some(fan.rays().to_vec()),
            ..Default::default()
        }
    }

    fn preset(&self, name: &str) -> Result<Preset, DocumentError> {
        let parse = |msg: String| Err(DocumentError::Parse(msg));
        let unexpected = |field: &str| {
            DocumentError::Parse(format!("field `{field}` is not used by preset {name}"))
        };
        let (a, n1, n2) = (self.a.is_some(), self.n1.is_some(), self.n2.is_some());
        match name {
            "P2" | "P1xP1" | "Bl3P2" => {
                if a {
                    return Err(unexpected("a"));
                }
                if n1 || n2 {
                    return Err(unexpected(if n1 { "n1" } else { "n2" }));
                }
                Ok(match name {
                    "P2" => Preset::P2,
                    "P1xP1" => Preset::P1xP1,
                    _ => Preset::Bl3P2,
                })
            }
            "Hirzebruch" => {
                if n1 || n2 {
                    return Err(unexpected(if n1 { "n1" } else { "n2" }));
                }
                match self.a {
                    Some(a) => Ok(Preset::Hirzebruch(a)),
                    None => parse("preset Hirzebruch needs field `a`".into()),
                }
            }
            "FakePlane" => {
                if a {
                    return Err(unexpected("a"));
                }
                match (self.n1, self.n2) {
                    (Some(n1), Some(n2)) => Ok(Preset::FakePlane(n1, n2)),
                    _ => parse("preset FakePlane needs fields `n1` and `n2`".into()),
                }
            }
            other => parse(format!(
                "unknown preset `{other}`, expected P2, P1xP1, Hirzebruch, Bl3P2 or FakePlane"
            )),
        }
    }

    pub fn build(&self) -> Result<Fan, DocumentError> {
        match (&self.rays, &self.preset) {
            (Some(_), Some(_)) => Err(DocumentError::Parse(
                "fan has both `rays` and `preset`".into(),
            )),
            (None, None) => Err(DocumentError::Parse(
                "fan needs either `rays` or `preset`".into(),
            )),
            (Some(rays), None) => {
                if let Some(field) = [("a", self.a.is_some()), ("n1", self.n1.is_some()), ("n2", self.n2.is_some())]
                    .iter()
                    .find(|f| f.1)
                    .map(|f| f.0)
                {
                    return Err(DocumentError::Parse(format!(
                        "field `{field}` only applies to presets"
                    )));
                }
                Ok(Fan::new(rays.iter().copied())?)
            }
            (None, Some(name)) => Ok(Fan::preset(self.preset(name)?)?),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub exp: LatticeVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub terms: Vec<TermSpec>,
}

impl CurveSpec {
    pub fn from_curve(curve: &LaurentCurve) -> Self {
        CurveSpec {
            terms: curve
                .terms()
                .map(|(exp, a)| TermSpec {
                    exp,
                    coeff: Some(a.to_string()),
                })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<LaurentCurve, DocumentError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let coeff = match &t.coeff {
                None => BigRational::from_integer(1.into()),
                Some(s) => parse_rational(s)?,
            };
            terms.push((t.exp, coeff));
        }
        Ok(LaurentCurve::new(terms)?)
    }
}

/// Parses `"p"` or `"p/q"`; surrounding whitespace is not allowed.
pub fn parse_rational(s: &str) -> Result<BigRational, DocumentError> {
    let bad = || DocumentError::Parse(format!("`{s}` is not a rational number p/q"));
    let valid = |part: &str| {
        let digits = part.strip_prefix('-').unwrap_or(part);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    let ok = match s.split_once('/') {
        Some((p, q)) => valid(p) && !q.starts_with('-') && valid(q),
        None => valid(s),
    };
    if !ok {
        return Err(bad());
    }
    BigRational::from_str(s).map_err(|_| bad())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    pub fan: FanSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_degree: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image_genus_branch: Option<u8>,
}

/// A validated input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub fan: Fan,
    pub curve: Option<LaurentCurve>,
    pub genus: Option<i64>,
    pub cover_degree: Option<i64>,
    pub image_genus: Option<ImageGenus>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let raw: RawDocument = serde_json::from_str(text)?;
        Self::from_raw(&raw)
    }

    pub fn from_raw(raw: &RawDocument) -> Result<Self, DocumentError> {
        let fan = raw.fan.build()?;
        let curve = raw.curve.as_ref().map(CurveSpec::build).transpose()?;
        if let Some(g) = raw.genus {
            if g < 0 {
                return Err(Error::Domain(format!("genus {g} is negative")).into());
            }
        }
        if let Some(m) = raw.cover_degree {
            if m < 1 {
                return Err(Error::Domain(format!("cover degree {m} must be at least 1")).into());
            }
        }
        let image_genus = raw
            .image_genus_branch
            .map(ImageGenus::try_from)
            .transpose()?;
        Ok(InputDocument {
            fan,
            curve,
            genus: raw.genus,
            cover_degree: raw.cover_degree,
            image_genus,
        })
    }

    /// The normalized form: explicit rays in canonical order, curve terms
    /// sorted by exponent with reduced coefficients.
    pub fn normalized(&self) -> RawDocument {
        RawDocument {
            fan: FanSpec::from_fan(&self.fan),
            curve: self.curve.as_ref().map(CurveSpec::from_curve),
            genus: self.genus,
            cover_degree: self.cover_degree,
            image_genus_branch: self.image_genus.map(|b| match b {
                ImageGenus::Rational => 0,
                ImageGenus::Elliptic => 1,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_and_curve() {
        let doc = InputDocument::parse(
            r#"{"fan": {"preset": "Bl3P2"},
                "curve": {"terms": [{"exp": [1,0]}, {"exp": [0,1], "coeff": "4/6"}]},
                "genus": 2, "cover_degree": 2, "image_genus_branch": 0}"#,
        )
        .unwrap();
        assert_eq!(doc.fan.len(), 6);
        let echo = serde_json::to_string(&doc.normalized()).unwrap();
        assert!(echo.contains(r#""coeff":"2/3""#));
        let again = InputDocument::parse(&echo).unwrap();
        assert_eq!(again, doc);
        assert_eq!(again.normalized(), doc.normalized());
    }

    #[test]
    fn parse_versus_validation() {
        let parse = |s: &str| InputDocument::parse(s).unwrap_err();
        assert!(matches!(parse("{"), DocumentError::Parse(_)));
        assert!(matches!(parse(r#"{"fan": {"preset": "P3"}}"#), DocumentError::Parse(_)));
        assert!(matches!(
            parse(r#"{"fan": {"rays": [[1,0]], "preset": "P2"}}"#),
            DocumentError::Parse(_)
        ));
        assert!(matches!(
            parse(r#"{"fan": {"preset": "P2"}, "colour": 1}"#),
            DocumentError::Parse(_)
        ));
        assert!(matches!(
            parse(r#"{"fan": {"preset": "P2"}, "curve": {"terms": [{"exp": [0,0], "coeff": "1/x"}]}}"#),
            DocumentError::Parse(_)
        ));
        assert!(matches!(
            parse(r#"{"fan": {"rays": [[1,0],[2,0],[0,1]]}}"#),
            DocumentError::Invalid(Error::NonPrimitiveRay(_))
        ));
        assert!(matches!(
            parse(r#"{"fan": {"preset": "P2"}, "genus": -1}"#),
            DocumentError::Invalid(Error::Domain(_))
        ));
        assert!(matches!(
            parse(r#"{"fan": {"preset": "P2"}, "curve": {"terms": [{"exp": [0,0]}]}}"#),
            DocumentError::Invalid(Error::TooFewTerms(1))
        ));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-6/4").unwrap().to_string(), "-3/2");
        assert_eq!(parse_rational("7").unwrap().to_string(), "7");
        for bad in ["", "1/0", " 1", "1/-2", "+1", "1.5", "a"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn presets_with_parameters() {
        let f = InputDocument::parse(r#"{"fan": {"preset": "Hirzebruch", "a": 1}}"#).unwrap();
        assert_eq!(f.fan.len(), 4);
        let f = InputDocument::parse(r#"{"fan": {"preset": "FakePlane", "n1": [2,-1], "n2": [-1,2]}}"#)
            .unwrap();
        assert!(!f.fan.is_smooth());
        assert!(InputDocument::parse(r#"{"fan": {"preset": "Hirzebruch"}}"#).is_err());
    }
}
