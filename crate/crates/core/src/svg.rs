//! Deterministic SVG drawings of fans and Newton polygons.
//!
//! One lattice unit is 40 px. The view box is the bounding box of everything
//! drawn, widened to integers, plus one unit of margin on each side. The
//! y axis points up. Output depends only on the input data.

use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::fan::Fan;
use crate::lattice::{LatticeVector, PolygonKind, RationalPoint};
use crate::newton::{circumscribed_polygon, LaurentCurve};

pub const UNIT: i64 = 40;

struct Frame {
    min_x: i64,
    max_y: i64,
    width: i64,
    height: i64,
}

impl Frame {
    fn new(points: &[RationalPoint]) -> Frame {
        let floor = |q: &BigRational| q.floor().to_integer().to_i64().unwrap_or(0);
        let ceil = |q: &BigRational| q.ceil().to_integer().to_i64().unwrap_or(0);
        let min_x = points.iter().map(|p| floor(&p.x)).min().unwrap_or(0).min(0) - 1;
        let max_x = points.iter().map(|p| ceil(&p.x)).max().unwrap_or(0).max(0) + 1;
        let min_y = points.iter().map(|p| floor(&p.y)).min().unwrap_or(0).min(0) - 1;
        let max_y = points.iter().map(|p| ceil(&p.y)).max().unwrap_or(0).max(0) + 1;
        Frame {
            min_x,
            max_y,
            width: (max_x - min_x) * UNIT,
            height: (max_y - min_y) * UNIT,
        }
    }

    fn x(&self, x: &BigRational) -> String {
        px((x - BigRational::from_integer(self.min_x.into())) * BigInt::from(UNIT))
    }

    fn y(&self, y: &BigRational) -> String {
        px((BigRational::from_integer(self.max_y.into()) - y) * BigInt::from(UNIT))
    }

    fn point(&self, p: &RationalPoint) -> (String, String) {
        (self.x(&p.x), self.y(&p.y))
    }

    fn open(&self, out: &mut String) {
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = self.width,
            h = self.height
        );
        let _ = writeln!(out, r#"<rect width="{}" height="{}" fill="white"/>"#, self.width, self.height);
        // Lattice points as faint dots.
        let cols = self.width / UNIT;
        let rows = self.height / UNIT;
        let _ = writeln!(out, r##"<g fill="#bbbbbb">"##);
        for j in 0..=rows {
            for i in 0..=cols {
                let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="1.5"/>"#, i * UNIT, j * UNIT);
            }
        }
        let _ = writeln!(out, "</g>");
    }
}

/// Pixel value rounded half away from zero to three decimals, trailing
/// zeros dropped.
fn px(v: BigRational) -> String {
    let scaled = v * BigInt::from(1000);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let twice = r.abs() * 2;
    let milli = if twice >= *scaled.denom() {
        q + if scaled.is_negative() { -1 } else { 1 }
    } else {
        q
    };
    let sign = if milli.is_negative() { "-" } else { "" };
    let (int, frac) = milli.abs().div_rem(&BigInt::from(1000));
    if frac == BigInt::from(0) {
        format!("{sign}{int}")
    } else {
        let digits = format!("{:03}", frac.to_u32().unwrap_or(0));
        format!("{sign}{int}.{}", digits.trim_end_matches('0'))
    }
}

fn rational(v: LatticeVector) -> RationalPoint {
    RationalPoint::from(v)
}

/// Rays drawn as arrows from the origin, each labelled by its coordinates.
pub fn render_fan(fan: &Fan) -> String {
    let points: Vec<RationalPoint> = fan.rays().iter().map(|&r| rational(r)).collect();
    let frame = Frame::new(&points);
    let mut out = String::new();
    frame.open(&mut out);
    let _ = writeln!(
        out,
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="8" markerHeight="8" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="black"/></marker></defs>"#
    );
    let (ox, oy) = frame.point(&rational(LatticeVector::ZERO));
    for (i, p) in points.iter().enumerate() {
        let (x, y) = frame.point(p);
        let _ = writeln!(
            out,
            r#"<line x1="{ox}" y1="{oy}" x2="{x}" y2="{y}" stroke="black" stroke-width="2" marker-end="url(#arrow)"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" dx="4" dy="-4" font-family="monospace" font-size="12">n{i} {}</text>"#,
            fan.ray(i)
        );
    }
    let _ = writeln!(out, r#"<circle cx="{ox}" cy="{oy}" r="3" fill="black"/>"#);
    out.push_str("</svg>\n");
    out
}

/// The Newton polygon filled at 20% opacity, the circumscribed polygon as a
/// thick outline, support points as dots and circumscribed vertices labelled
/// by their indices.
pub fn render_polygons(fan: &Fan, curve: &LaurentCurve) -> String {
    let newton = curve.newton_polygon();
    let circ = circumscribed_polygon(fan, curve);
    let support = curve.support();
    let mut points: Vec<RationalPoint> = support.iter().map(|&m| rational(m)).collect();
    points.extend(circ.mu.iter().cloned());
    let frame = Frame::new(&points);
    let mut out = String::new();
    frame.open(&mut out);

    let path = |pts: &mut dyn Iterator<Item = RationalPoint>| -> String {
        pts.map(|p| {
            let (x, y) = frame.point(&p);
            format!("{x},{y}")
        })
        .collect::<Vec<_>>()
        .join(" ")
    };

    let verts = path(&mut newton.vertices().iter().map(|&v| rational(v)));
    match newton.kind() {
        PolygonKind::Polygon => {
            let _ = writeln!(
                out,
                r##"<polygon points="{verts}" fill="#1f77b4" fill-opacity="0.2" stroke="#1f77b4" stroke-width="1"/>"##
            );
        }
        PolygonKind::Segment | PolygonKind::Point => {
            let _ = writeln!(
                out,
                r##"<polyline points="{verts}" fill="none" stroke="#1f77b4" stroke-opacity="0.2" stroke-width="6"/>"##
            );
        }
    }

    let outline = circ.distinct_vertices();
    let outline_pts = path(&mut outline.iter().cloned());
    let _ = writeln!(
        out,
        r#"<polygon points="{outline_pts}" fill="none" stroke="black" stroke-width="3"/>"#
    );

    let _ = writeln!(out, r##"<g fill="#1f77b4">"##);
    for m in &support {
        let (x, y) = frame.point(&rational(*m));
        let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="4"/>"#);
    }
    let _ = writeln!(out, "</g>");

    for v in &outline {
        let labels: Vec<String> = circ
            .mu
            .iter()
            .enumerate()
            .filter(|(_, mu)| *mu == v)
            .map(|(i, _)| format!("μ{i}"))
            .collect();
        let (x, y) = frame.point(v);
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" dx="5" dy="14" font-family="serif" font-size="13">{}</text>"#,
            labels.join(",")
        );
    }
    out.push_str("</svg>\n");
    out
}
