//! The `toric-bn` command line.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 invalid data, 3 I/O.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::brill_noether::{
    bn_verdict, expected_dim_maps_projective, expected_dim_maps_surface, farkas_expected_dim,
    multiple_cover_excess, multiple_cover_family_dim, rho, severi_dim, ImageGenus, Outcome,
    Verdict,
};
use crate::classify::{classify, line_witness_scan, orientation_notes, Classification, Witness};
use crate::document::{DocumentError, InputDocument};
use crate::error::Error;
use crate::fan::Fan;
use crate::newton::{
    anticanonical_degree, boundary_intersections, chart_decomposition, circumscribed_polygon,
    support_lines, LaurentCurve,
};
use crate::svg::{render_fan, render_polygons};

#[derive(Debug, Parser)]
#[command(name = "toric-bn", version, about = "Curves of low anti-canonical degree on toric surfaces")]
pub struct Cli {
    /// Print canonical JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Acknowledge that curve coefficients are taken as given; the
    /// computations only use the support. Always on.
    #[arg(long, global = true)]
    pub assume_integral: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a fan and report smoothness, class group, opposite pairs and
    /// zero-sum triples.
    FanCheck(InputArg),
    /// Intersection numbers with every boundary divisor.
    Degree(InputArg),
    /// Low-degree classification and witness scan.
    Classify(InputArg),
    /// Dimension verdict for multiple covers.
    Verdict(VerdictArgs),
    /// Evaluate a single dimension formula.
    #[command(subcommand)]
    Dims(Dims),
    /// Write an SVG drawing.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// JSON input document; standard input if omitted or `-`.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerdictArgs {
    /// JSON input document; standard input if omitted or `-`. Not read when
    /// `--image-degree` is given.
    pub input: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub genus: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub cover_degree: Option<i64>,
    /// Genus of the image curve, 0 or 1.
    #[arg(long)]
    pub image_genus: Option<u8>,
    /// Anti-canonical degree of the image; skips the input document.
    #[arg(long, allow_negative_numbers = true)]
    pub image_degree: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum Dims {
    /// g - (r+1)(g-d+r)
    Rho { g: i64, r: i64, d: i64 },
    /// (r+1)d + r(1-g)
    Projective { g: i64, r: i64, d: i64 },
    /// deg + 2(1-g)
    Surface { g: i64, deg: i64 },
    /// deg + g - 1
    Severi { g: i64, deg: i64 },
    /// deg + r(1-g)
    Farkas { g: i64, r: i64, deg: i64 },
    /// g - (m-1)(deg-2)
    Excess { g: i64, m: i64, deg: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Fan,
    Polygons,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub target: Target,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Parse(String),
    Invalid(Error),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Parse(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Parse(m) => write!(f, "parse error: {m}"),
            Failure::Invalid(e) => write!(f, "invalid input: {e}"),
            Failure::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Parse(m) => Failure::Parse(m),
            DocumentError::Invalid(e) => Failure::Invalid(e),
        }
    }
}

/// What a command produced: a JSON report and its text rendering.
pub struct Report {
    pub json: Value,
    pub text: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn read_document(input: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<InputDocument, Failure> {
    let mut text = String::new();
    match input {
        Some(path) if path.as_os_str() != "-" => {
            text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        }
        _ => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::Io(format!("standard input: {e}")))?;
        }
    }
    Ok(InputDocument::parse(&text)?)
}

fn require_curve(doc: &InputDocument) -> Result<&LaurentCurve, Failure> {
    doc.curve
        .as_ref()
        .ok_or_else(|| Failure::Usage("this command needs a `curve` in the input document".into()))
}

fn echo(command: &str, doc: &InputDocument) -> Value {
    json!({ "command": command, "input": to_value(&doc.normalized()) })
}

fn fan_line(fan: &Fan) -> String {
    let smooth = if fan.is_smooth() { "smooth" } else { "singular" };
    format!("fan: {fan} ({} rays, {smooth})", fan.len())
}

pub fn fan_check(doc: &InputDocument) -> Report {
    let fan = &doc.fan;
    let smoothness = fan.smoothness();
    let class_group = fan.class_group();
    let pairs = fan.opposite_ray_pairs();
    let triples = fan.zero_sum_triples();

    let mut report = echo("fan-check", doc);
    report["results"] = json!({
        "valid": true,
        "rays": to_value(&fan.rays()),
        "class_group": to_value(&class_group),
        "opposite_pairs": pairs.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
        "zero_sum_triples": triples.iter().map(|(t, p)| json!({
            "triple": t,
            "fake_plane": to_value(p),
        })).collect::<Vec<_>>(),
    });
    report["diagnostics"] = json!({ "smoothness": to_value(&smoothness) });

    let mut text = String::new();
    let _ = writeln!(text, "{}", fan_line(fan));
    let indices: Vec<String> = smoothness.cone_indices.iter().map(i128::to_string).collect();
    let _ = writeln!(text, "cone indices: {}", indices.join(" "));
    let torsion: Vec<String> = class_group.torsion.iter().map(ToString::to_string).collect();
    let _ = writeln!(
        text,
        "class group: rank {}, torsion [{}]",
        class_group.rank,
        torsion.join(", ")
    );
    let _ = writeln!(text, "opposite pairs: {}", pairs.len());
    for (i, j) in &pairs {
        let _ = writeln!(text, "  {i} {j}: {} {}", fan.ray(*i), fan.ray(*j));
    }
    let _ = writeln!(text, "zero-sum triples: {}", triples.len());
    for (t, p) in &triples {
        let kind = if p.is_projective_plane { "P2" } else { "fake plane" };
        let idx: Vec<String> = p.cone_indices.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            text,
            "  {} {} {}: {} {} {} ({kind}, indices {})",
            t[0],
            t[1],
            t[2],
            fan.ray(t[0]),
            fan.ray(t[1]),
            fan.ray(t[2]),
            idx.join(" ")
        );
    }
    Report { json: report, text }
}

fn degree_results(fan: &Fan, curve: &LaurentCurve) -> Result<(Value, String), Failure> {
    let intersections = boundary_intersections(fan, curve)?;
    let degree = anticanonical_degree(fan, curve)?;
    let circ = circumscribed_polygon(fan, curve);
    let charts = (0..fan.len())
        .map(|i| chart_decomposition(fan, curve, i))
        .collect::<Result<Vec<_>, _>>()?;
    let lines = support_lines(fan, curve);

    let value = json!({
        "intersections": intersections,
        "degree": degree,
        "arithmetic_genus": curve.arithmetic_genus(),
        "newton_polygon": to_value(&curve.newton_polygon()),
        "support_lines": to_value(&lines),
        "circumscribed": to_value(&circ),
        "charts": to_value(&charts),
    });

    let mut text = String::new();
    let _ = writeln!(text, "curve: {curve}");
    let _ = writeln!(text, "arithmetic genus: {}", curve.arithmetic_genus());
    for (i, e) in circ.edges.iter().enumerate() {
        let c = &charts[i];
        let _ = writeln!(
            text,
            "D{i} {}: C.D = {}  mu{} = {}  chart a+b-c = {}+{}-{}",
            e.ray,
            intersections[i],
            i,
            circ.mu[i],
            c.a,
            c.b,
            c.c
        );
    }
    let _ = writeln!(text, "anti-canonical degree: {degree}");
    Ok((value, text))
}

pub fn degree(doc: &InputDocument) -> Result<Report, Failure> {
    let curve = require_curve(doc)?;
    let (results, body) = degree_results(&doc.fan, curve)?;
    let mut report = echo("degree", doc);
    report["results"] = results;
    report["diagnostics"] = json!({ "smoothness": to_value(&doc.fan.smoothness()) });
    let text = format!("{}\n{body}", fan_line(&doc.fan));
    Ok(Report { json: report, text })
}

fn describe_classification(fan: &Fan, c: &Classification) -> String {
    match c {
        Classification::HighDegree { degree } => format!("high_degree (degree {degree})"),
        Classification::FiberOfProjection {
            ray_pair,
            rays,
            contracted_direction,
        } => format!(
            "fiber_of_projection on rays {} {} ({} {}), contracted direction {}",
            ray_pair[0], ray_pair[1], rays[0], rays[1], contracted_direction
        ),
        Classification::MapsToFakePlane {
            ray_triple,
            fake_plane,
            ..
        } => {
            let kind = if fake_plane.is_projective_plane {
                "P2".to_string()
            } else {
                let idx: Vec<String> = fake_plane.cone_indices.iter().map(ToString::to_string).collect();
                format!("fake plane with indices {}", idx.join(" "))
            };
            format!(
                "maps_to_fake_plane on rays {} {} {} ({} {} {}), {kind}",
                ray_triple[0],
                ray_triple[1],
                ray_triple[2],
                fan.ray(ray_triple[0]),
                fan.ray(ray_triple[1]),
                fan.ray(ray_triple[2]),
            )
        }
    }
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Projection { ray_pair, rays } => format!(
            "projection along rays {} {} ({} {})",
            ray_pair[0], ray_pair[1], rays[0], rays[1]
        ),
        Witness::FakePlane {
            ray_triple,
            fake_plane,
            vertices,
        } => format!(
            "fake plane {} {} {} ({} {} {}), triangle {} {} {}",
            ray_triple[0],
            ray_triple[1],
            ray_triple[2],
            fake_plane.rays[0],
            fake_plane.rays[1],
            fake_plane.rays[2],
            vertices[0],
            vertices[1],
            vertices[2]
        ),
    }
}

pub fn classify_cmd(doc: &InputDocument) -> Result<Report, Failure> {
    let fan = &doc.fan;
    let curve = require_curve(doc)?;
    let (mut results, body) = degree_results(fan, curve)?;
    let classification = classify(fan, curve)?;
    let witnesses = line_witness_scan(fan, curve)?;
    let notes = orientation_notes(fan, curve);
    results["classification"] = to_value(&classification);
    results["witnesses"] = to_value(&witnesses);

    let mut report = echo("classify", doc);
    report["results"] = results;
    report["diagnostics"] = json!({
        "smoothness": to_value(&fan.smoothness()),
        "orientation_notes": to_value(&notes),
    });

    let mut text = format!("{}\n{body}", fan_line(fan));
    let _ = writeln!(text, "classification: {}", describe_classification(fan, &classification));
    if witnesses.is_empty() {
        let _ = writeln!(text, "witnesses: none");
    } else {
        let _ = writeln!(text, "witnesses: {}", witnesses.len());
        for w in &witnesses {
            let _ = writeln!(text, "  {}", describe_witness(w));
        }
    }
    for n in &notes {
        let join = |t: &[crate::lattice::LatticeVector; 3]| format!("{} {} {}", t[0], t[1], t[2]);
        let _ = writeln!(
            text,
            "orientation note: triple {} is {}a witness, negated triple {} is {}a witness",
            join(&n.triple),
            if n.triple_is_witness { "" } else { "not " },
            join(&n.negated),
            if n.negated_is_witness { "" } else { "not " },
        );
    }
    Ok(Report { json: report, text })
}

fn verdict_text(v: &Verdict) -> String {
    let (g, m, d) = (v.genus, v.cover_degree, v.image_degree);
    let mut text = String::new();
    let branch = match v.image_genus {
        ImageGenus::Rational => 0,
        ImageGenus::Elliptic => 1,
    };
    let _ = writeln!(
        text,
        "genus {g}, cover degree {m}, image degree {d}, image genus {branch}"
    );
    let _ = writeln!(
        text,
        "expected dimension: {m}*{d} + 2 - 2*{g} = {}",
        v.expected_dim
    );
    if m >= 2 && v.image_genus == ImageGenus::Rational {
        let _ = writeln!(text, "rho({g}, 1, {m}) = {}", rho(g, 1, m));
        let _ = writeln!(
            text,
            "family dimension: (2*{m} - {g} + 1) + ({d} - 1) = {}",
            multiple_cover_family_dim(g, m, d)
        );
        let _ = writeln!(
            text,
            "excess: {g} - ({m} - 1)*({d} - 2) = {}",
            multiple_cover_excess(g, m, d)
        );
    }
    let detail = match &v.outcome {
        Outcome::ExpectedDimension { generically_smooth } => {
            format!("generically smooth: {generically_smooth}")
        }
        Outcome::NoSuchCovers { reason } => reason.clone(),
        Outcome::ObstructedComponent {
            family_dim, excess, ..
        } => format!("family dimension {family_dim}, excess {excess}"),
        Outcome::BoundarySpecialCase { family_dim } | Outcome::NotAComponent { family_dim } => {
            format!("family dimension {family_dim}")
        }
        Outcome::LowDegreeBirational { .. } => "no claim on the dimension".to_string(),
    };
    let _ = writeln!(text, "outcome: {} ({detail})", v.outcome.tag());
    text
}

pub fn verdict(args: &VerdictArgs, stdin: &mut dyn Read) -> Result<Report, Failure> {
    let doc = match args.image_degree {
        Some(_) => None,
        None => Some(read_document(&args.input, stdin)?),
    };
    let genus = args
        .genus
        .or(doc.as_ref().and_then(|d| d.genus))
        .ok_or_else(|| Failure::Usage("verdict needs a genus (--genus or `genus`)".into()))?;
    let m = args
        .cover_degree
        .or(doc.as_ref().and_then(|d| d.cover_degree))
        .ok_or_else(|| {
            Failure::Usage("verdict needs a cover degree (--cover-degree or `cover_degree`)".into())
        })?;
    let image_genus = match args.image_genus {
        Some(b) => ImageGenus::try_from(b)?,
        None => doc.as_ref().and_then(|d| d.image_genus).unwrap_or_default(),
    };

    let (verdict, mut report, mut text) = match (&doc, args.image_degree) {
        (_, Some(deg)) => {
            let v = bn_verdict(genus, m, deg, image_genus, None)?;
            let report = json!({
                "command": "verdict",
                "input": { "genus": genus, "cover_degree": m, "image_degree": deg,
                           "image_genus_branch": to_value(&image_genus) },
            });
            (v, report, String::new())
        }
        (Some(doc), None) => {
            let curve = require_curve(doc)?;
            let classification = classify(&doc.fan, curve)?;
            let deg = classification.degree() as i64;
            let v = bn_verdict(genus, m, deg, image_genus, Some(classification.clone()))?;
            let mut text = format!("{}\ncurve: {curve}\n", fan_line(&doc.fan));
            let _ = writeln!(
                text,
                "classification: {}",
                describe_classification(&doc.fan, &classification)
            );
            (v, echo("verdict", doc), text)
        }
        (None, None) => unreachable!("document read when no image degree is given"),
    };
    let (g, d) = (verdict.genus, verdict.image_degree);
    report["results"] = json!({
        "verdict": to_value(&verdict),
        "arithmetic": {
            "expected_dim": verdict.expected_dim,
            "rho": rho(g, 1, m),
            "family_dim": multiple_cover_family_dim(g, m, d),
            "excess": multiple_cover_excess(g, m, d),
        },
    });
    text.push_str(&verdict_text(&verdict));
    Ok(Report { json: report, text })
}

pub fn dims(d: &Dims) -> Report {
    let (name, args, formula, value): (&str, Value, String, i64) = match *d {
        Dims::Rho { g, r, d } => (
            "rho",
            json!({"g": g, "r": r, "d": d}),
            format!("rho({g}, {r}, {d}) = {g} - ({r}+1)*({g} - {d} + {r})"),
            rho(g, r, d),
        ),
        Dims::Projective { g, r, d } => (
            "projective",
            json!({"g": g, "r": r, "d": d}),
            format!("({r}+1)*{d} + {r}*(1 - {g})"),
            expected_dim_maps_projective(g, r, d),
        ),
        Dims::Surface { g, deg } => (
            "surface",
            json!({"g": g, "deg": deg}),
            format!("{deg} + 2*(1 - {g})"),
            expected_dim_maps_surface(g, deg),
        ),
        Dims::Severi { g, deg } => (
            "severi",
            json!({"g": g, "deg": deg}),
            format!("{deg} + {g} - 1"),
            severi_dim(g, deg),
        ),
        Dims::Farkas { g, r, deg } => (
            "farkas",
            json!({"g": g, "r": r, "deg": deg}),
            format!("{deg} + {r}*(1 - {g})"),
            farkas_expected_dim(g, r, deg),
        ),
        Dims::Excess { g, m, deg } => (
            "excess",
            json!({"g": g, "m": m, "deg": deg}),
            format!("{g} - ({m} - 1)*({deg} - 2)"),
            multiple_cover_excess(g, m, deg),
        ),
    };
    Report {
        json: json!({
            "command": "dims",
            "input": { "formula": name, "args": args },
            "results": { "value": value },
        }),
        text: format!("{formula} = {value}\n"),
    }
}

pub fn render(args: &RenderArgs, stdin: &mut dyn Read) -> Result<Report, Failure> {
    let doc = read_document(&args.input, stdin)?;
    let (svg, target) = match args.target {
        Target::Fan => (render_fan(&doc.fan), "fan"),
        Target::Polygons => (render_polygons(&doc.fan, require_curve(&doc)?), "polygons"),
    };
    std::fs::write(&args.out, &svg)
        .map_err(|e| Failure::Io(format!("{}: {e}", args.out.display())))?;
    let mut report = echo("render", &doc);
    report["results"] = json!({
        "target": target,
        "out": args.out.display().to_string(),
        "bytes": svg.len(),
    });
    let text = format!("wrote {target} diagram to {}\n", args.out.display());
    Ok(Report { json: report, text })
}

pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Report, Failure> {
    match &cli.command {
        Command::FanCheck(a) => Ok(fan_check(&read_document(&a.input, stdin)?)),
        Command::Degree(a) => degree(&read_document(&a.input, stdin)?),
        Command::Classify(a) => classify_cmd(&read_document(&a.input, stdin)?),
        Command::Verdict(a) => verdict(a, stdin),
        Command::Dims(d) => Ok(dims(d)),
        Command::Render(a) => render(a, stdin),
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    1
                }
            };
        }
    };
    match execute(&cli, stdin) {
        Ok(report) => {
            let out = if cli.json {
                let mut s = serde_json::to_string_pretty(&report.json).expect("json");
                s.push('\n');
                s
            } else {
                report.text
            };
            if stdout.write_all(out.as_bytes()).is_err() {
                return 3;
            }
            0
        }
        Err(f) => {
            let _ = writeln!(stderr, "toric-bn: {f}");
            f.exit_code()
        }
    }
}
