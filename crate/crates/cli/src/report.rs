//! Structured command results, rendered as text or JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use toriq_core::covering::CoverWitness;
use toriq_core::fans::{AffineSystemOfFans, Fan, LabelledCone};
use toriq_core::quotient::{
    AvQuotient, DiagnosisReport, Flag, FlagPattern, GlueingWitness, HhatResult, OrbitImageReport, Rule,
    SeparationResult, TpQuotient, TraceEntry,
};
use toriq_core::{FanError, IntMat, QuotientError, Sublattice};

use crate::problem::{cone_spec, fan_spec, int_vector, matrix_spec, ConeSpec, FanSpec, IntersectionSpec, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Validate(ValidateReport),
    Hhat(HhatReport),
    Separation(SeparationReport),
    TvQuotient(SeparationReport),
    TpQuotient(TpReport),
    Image(ImageReport),
    Diagnose(DiagnoseReport),
    SlicePlot(SliceReport),
    Examples(ExamplesReport),
    Error(ErrorReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<ConeSpec>,
}

impl ErrorReport {
    pub fn new(kind: &str, message: impl Into<String>) -> ErrorReport {
        ErrorReport { kind: kind.into(), message: message.into(), witness: None }
    }

    pub fn fan(e: &FanError) -> ErrorReport {
        let (kind, witness) = match e {
            FanError::NotStrictlyConvex { cone, .. } => ("not-strictly-convex", Some(cone)),
            FanError::FanConditionViolation { intersection, .. } => ("fan-condition-violation", Some(intersection)),
            FanError::SymmetryViolation { .. } => ("symmetry-violation", None),
            FanError::NotCommonFace { cone, .. } => ("not-common-face", Some(cone)),
            FanError::TripleConditionViolation { cone, .. } => ("triple-condition-violation", Some(cone)),
            FanError::UnknownChart { .. } => ("unknown-chart", None),
            FanError::SelfIntersection { .. } => ("self-intersection", None),
            FanError::AmbientMismatch { .. } => ("ambient-mismatch", None),
            FanError::NoTargetCone { cone, .. } => ("no-target-cone", Some(cone)),
            FanError::Empty => ("empty-fan", None),
            FanError::Lin(_) => ("linear-algebra", None),
        };
        ErrorReport { kind: kind.into(), message: e.to_string(), witness: witness.map(cone_spec) }
    }

    pub fn quotient(e: &QuotientError) -> ErrorReport {
        let kind = match e {
            QuotientError::ActionTooLarge { .. } => "action-too-large",
            QuotientError::ClassUnionNotStrictlyConvex { .. } => "class-union-not-strictly-convex",
            QuotientError::ClassUnionNotConvex { .. } => "class-union-not-convex",
            QuotientError::FanConditionViolation { .. } => "fan-condition-violation",
            QuotientError::ChainConditionFailure { .. } => "chain-condition-failure",
            QuotientError::UnsupportedCodimension { .. } => "unsupported-codimension",
            QuotientError::NotAFan => "not-a-fan",
            QuotientError::Unsupported(_) => "unsupported",
            QuotientError::Fan(f) => return ErrorReport::fan(f),
            QuotientError::Cone(_) => "cone",
            QuotientError::Cover(_) => "cover",
            QuotientError::Lin(_) => "linear-algebra",
        };
        let witness = match e {
            QuotientError::ChainConditionFailure { face, .. } => Some(cone_spec(face)),
            _ => None,
        };
        ErrorReport { kind: kind.into(), message: e.to_string(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledOut {
    pub chart: usize,
    pub cone: ConeSpec,
}

impl LabelledOut {
    fn of(l: &LabelledCone) -> LabelledOut {
        LabelledOut { chart: l.chart, cone: cone_spec(&l.cone) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemOut {
    pub lattice_rank: usize,
    pub charts: Vec<ConeSpec>,
    pub intersections: Vec<IntersectionSpec>,
}

impl SystemOut {
    pub fn of(s: &AffineSystemOfFans) -> SystemOut {
        SystemOut {
            lattice_rank: s.ambient_rank(),
            charts: s.charts().iter().map(cone_spec).collect(),
            intersections: s
                .intersections()
                .iter()
                .map(|d| IntersectionSpec { i: d.i, j: d.j, cones: d.cones.iter().map(cone_spec).collect() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapOut {
    pub valid: bool,
    /// Smallest target cone containing the image of each chart.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assignment: Vec<ConeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sublattice: Option<Vec<Vector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
}

impl ValidateReport {
    pub fn invalid(error: ErrorReport) -> ValidateReport {
        ValidateReport {
            valid: false,
            fan: None,
            system: None,
            cone_count: None,
            sublattice: None,
            map: None,
            error: Some(error),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleOut {
    OppositeFaces,
    LineInClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceOut {
    pub rule: RuleOut,
    pub first: LabelledOut,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<LabelledOut>,
    pub added: Vec<Vector>,
}

impl TraceOut {
    fn of(t: &TraceEntry) -> TraceOut {
        TraceOut {
            rule: match t.rule {
                Rule::OppositeFaces => RuleOut::OppositeFaces,
                Rule::LineInClass => RuleOut::LineInClass,
            },
            first: LabelledOut::of(&t.first),
            second: t.second.as_ref().map(LabelledOut::of),
            added: t.added.iter().map(int_vector).collect(),
        }
    }
}

fn basis(l: &Sublattice) -> Vec<Vector> {
    l.basis().iter().map(int_vector).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HhatReport {
    pub lattice: Vec<Vector>,
    pub rank: usize,
    pub codim: usize,
    pub certified: bool,
    pub projection: Vec<Vector>,
    pub trace: Vec<TraceOut>,
}

impl HhatReport {
    pub fn of(h: &HhatResult, projection: &IntMat) -> HhatReport {
        HhatReport {
            lattice: basis(&h.lattice),
            rank: h.lattice.rank(),
            codim: h.codim,
            certified: h.certified,
            projection: matrix_spec(projection),
            trace: h.trace.iter().map(TraceOut::of).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub codim: usize,
    pub certified: bool,
    pub lattice: Vec<Vector>,
    pub projection: Vec<Vector>,
    pub quotient_fan: FanSpec,
    pub class_of: Vec<usize>,
    pub cone_of_class: Vec<ConeSpec>,
    pub trace: Vec<TraceOut>,
}

impl SeparationReport {
    pub fn of(s: &SeparationResult) -> SeparationReport {
        SeparationReport {
            codim: s.codim,
            certified: s.certified,
            lattice: basis(&s.lattice),
            projection: matrix_spec(&s.projection),
            quotient_fan: fan_spec(&s.quotient_fan),
            class_of: s.class_of.clone(),
            cone_of_class: s.cone_of_class.iter().map(cone_spec).collect(),
            trace: s.trace.iter().map(TraceOut::of).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TpReport {
    pub projection: Vec<Vector>,
    pub system: SystemOut,
    pub separated: bool,
}

impl TpReport {
    pub fn of(t: &TpQuotient) -> TpReport {
        TpReport {
            projection: matrix_spec(&t.projection),
            system: SystemOut::of(&t.system),
            separated: t.system.is_separated(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapSource {
    /// The map given in the problem file.
    File,
    /// The quotient map of the toric variety quotient.
    TvQuotient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetFaceOut {
    pub face: ConeSpec,
    pub in_image: bool,
    pub preimages: Vec<LabelledOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageReport {
    pub map_source: MapSource,
    pub matrix: Vec<Vector>,
    pub target: FanSpec,
    pub weakly_proper: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_point: Option<Vector>,
    pub surjective: bool,
    pub image_open: bool,
    pub missing_faces: Vec<ConeSpec>,
    pub faces: Vec<TargetFaceOut>,
}

impl ImageReport {
    pub fn of(
        map_source: MapSource,
        matrix: &IntMat,
        target: &Fan,
        proper: &CoverWitness,
        image: &OrbitImageReport,
    ) -> ImageReport {
        ImageReport {
            map_source,
            matrix: matrix_spec(matrix),
            target: fan_spec(target),
            weakly_proper: proper.covered,
            gap_point: proper.gap_point.as_ref().map(int_vector),
            surjective: image.surjective,
            image_open: image.image_open,
            missing_faces: image.missing_faces.iter().map(cone_spec).collect(),
            faces: image
                .faces
                .iter()
                .map(|f| TargetFaceOut {
                    face: cone_spec(&f.face),
                    in_image: f.in_image,
                    preimages: f.preimages.iter().map(LabelledOut::of).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueingOut {
    pub face: ConeSpec,
    pub i: usize,
    pub j: usize,
    pub from_i: Vec<ConeSpec>,
    pub from_j: Vec<ConeSpec>,
}

impl GlueingOut {
    fn of(w: &GlueingWitness) -> GlueingOut {
        GlueingOut {
            face: cone_spec(&w.face),
            i: w.i,
            j: w.j,
            from_i: w.from_i.iter().map(cone_spec).collect(),
            from_j: w.from_j.iter().map(cone_spec).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnoseReport {
    pub codim: usize,
    /// `exists-equals-tv` or `unknown`.
    pub av_quotient: String,
    pub flags: Vec<String>,
    pub pattern: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_point: Option<Vector>,
    pub missing_faces: Vec<ConeSpec>,
    pub glueing: Vec<GlueingOut>,
    pub tv_quotient: SeparationReport,
}

pub fn flag_name(f: Flag) -> &'static str {
    match f {
        Flag::NotWeaklyProper => "not-weakly-proper",
        Flag::ImageNotOpen => "image-not-open",
        Flag::GlueingDeficiency => "glueing-deficiency",
    }
}

pub fn pattern_name(p: FlagPattern) -> &'static str {
    match p {
        FlagPattern::NoObstruction => "no-obstruction",
        FlagPattern::GlueingOnly => "glueing-only",
        FlagPattern::NonSurjectiveWithGlueing => "non-surjective-with-glueing",
        FlagPattern::NonSurjective => "non-surjective",
        FlagPattern::Other => "other",
    }
}

fn pattern_note(pattern: &str) -> Option<&'static str> {
    match pattern {
        "glueing-only" => Some(
            "the variety quotient exists, but it identifies orbits of charts that are not glued",
        ),
        "non-surjective-with-glueing" => Some(
            "typical when a non-separated prevariety quotient exists but no variety quotient does",
        ),
        "non-surjective" => Some("typical when neither a variety nor a prevariety quotient exists"),
        _ => None,
    }
}

impl DiagnoseReport {
    pub fn of(d: &DiagnosisReport) -> DiagnoseReport {
        DiagnoseReport {
            codim: d.codim,
            av_quotient: match d.av_quotient {
                AvQuotient::ExistsEqualsTv => "exists-equals-tv",
                AvQuotient::Unknown => "unknown",
            }
            .into(),
            flags: d.flags.iter().map(|f| flag_name(*f).to_string()).collect(),
            pattern: pattern_name(d.pattern).into(),
            gap_point: d.gap_point.as_ref().map(int_vector),
            missing_faces: d.missing_faces.iter().map(cone_spec).collect(),
            glueing: d.glueing.iter().map(GlueingOut::of).collect(),
            tv_quotient: SeparationReport::of(&d.tv_quotient),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionOut {
    pub label: String,
    /// Vertices in the plane coordinates, as exact rationals.
    pub vertices: Vec<[String; 2]>,
    /// Whether the region was cut off by the drawing frame.
    pub clipped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceReport {
    pub fan: String,
    pub normal: Vector,
    pub level: String,
    /// Indices of the coordinates used as plane coordinates.
    pub axes: [usize; 2],
    pub regions: Vec<RegionOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleOut {
    pub name: String,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExamplesReport {
    pub examples: Vec<ExampleOut>,
}

/// ANSI styling for text output.
#[derive(Clone, Copy, Debug)]
pub struct Style {
    pub color: bool,
}

impl Style {
    fn paint(&self, code: &str, s: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }

    fn head(&self, s: &str) -> String {
        self.paint("1", s)
    }

    fn good(&self, s: &str) -> String {
        self.paint("32", s)
    }

    fn bad(&self, s: &str) -> String {
        self.paint("31", s)
    }
}

fn vec_text(v: &[crate::problem::Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.0.to_string()).collect();
    format!("({})", parts.join(","))
}

fn cone_text(c: &ConeSpec) -> String {
    if c.is_empty() {
        return "{0}".into();
    }
    let parts: Vec<String> = c.iter().map(|v| vec_text(v)).collect();
    format!("cone({})", parts.join(","))
}

fn vecs_text(vs: &[Vector]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| vec_text(v)).collect();
    format!("[{}]", parts.join(", "))
}

fn cones_text(cs: &[ConeSpec]) -> String {
    if cs.is_empty() {
        return "{0}".into();
    }
    let parts: Vec<String> = cs.iter().map(cone_text).collect();
    parts.join(", ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn trace_text(out: &mut String, trace: &[TraceOut]) {
    if trace.is_empty() {
        let _ = writeln!(out, "  trace: no enlargement");
    }
    for t in trace {
        let rule = match t.rule {
            RuleOut::OppositeFaces => "opposite-faces",
            RuleOut::LineInClass => "line-in-class",
        };
        let _ = write!(out, "  {rule}: chart {} face {}", t.first.chart, cone_text(&t.first.cone));
        if let Some(s) = &t.second {
            let _ = write!(out, " with chart {} face {}", s.chart, cone_text(&s.cone));
        }
        let _ = writeln!(out, ", added {}", vecs_text(&t.added));
    }
}

fn fan_text(out: &mut String, label: &str, f: &FanSpec) {
    let _ = writeln!(out, "  {label} in rank {}:", f.lattice_rank);
    for c in &f.maximal_cones {
        let _ = writeln!(out, "    {}", cone_text(c));
    }
}

fn separation_text(out: &mut String, s: &SeparationReport) {
    let _ = writeln!(out, "  codimension: {} ({})", s.codim, if s.certified { "certified" } else { "not certified" });
    let _ = writeln!(out, "  lattice: span{}", vecs_text(&s.lattice));
    let _ = writeln!(out, "  projection: {}", vecs_text(&s.projection));
    fan_text(out, "quotient fan", &s.quotient_fan);
    let classes: Vec<String> = s.class_of.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(out, "  class of each chart: [{}]", classes.join(", "));
    trace_text(out, &s.trace);
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self, style: Style) -> String {
        let mut out = String::new();
        match self {
            Report::Validate(r) => {
                if r.valid {
                    let _ = writeln!(out, "{}", style.good("valid"));
                    if let Some(f) = &r.fan {
                        fan_text(&mut out, "fan", f);
                        let _ = writeln!(out, "  cones: {}", r.cone_count.unwrap_or(0));
                    }
                    if let Some(s) = &r.system {
                        let _ = writeln!(out, "  system in rank {} with {} charts:", s.lattice_rank, s.charts.len());
                        for (k, c) in s.charts.iter().enumerate() {
                            let _ = writeln!(out, "    chart {k}: {}", cone_text(c));
                        }
                        for d in &s.intersections {
                            let _ = writeln!(out, "    glued ({},{}) along {}", d.i, d.j, cones_text(&d.cones));
                        }
                    }
                    if let Some(l) = &r.sublattice {
                        let _ = writeln!(out, "  sublattice: span{}", vecs_text(l));
                    }
                } else {
                    let _ = writeln!(out, "{}", style.bad("invalid"));
                }
                if let Some(m) = &r.map {
                    if m.valid {
                        let _ = writeln!(out, "  map: valid, charts land in {}", cones_text(&m.assignment));
                    } else {
                        let _ = writeln!(out, "  map: {}", style.bad("invalid"));
                    }
                    if let Some(e) = &m.error {
                        error_text(&mut out, e);
                    }
                }
                if let Some(e) = &r.error {
                    error_text(&mut out, e);
                }
            }
            Report::Hhat(h) => {
                let _ = writeln!(out, "{}", style.head("invariant-function lattice"));
                let _ = writeln!(out, "  lattice: span{} (rank {})", vecs_text(&h.lattice), h.rank);
                let _ = writeln!(out, "  codimension: {} ({})", h.codim, if h.certified { "certified" } else { "not certified" });
                let _ = writeln!(out, "  projection: {}", vecs_text(&h.projection));
                trace_text(&mut out, &h.trace);
            }
            Report::Separation(s) => {
                let _ = writeln!(out, "{}", style.head("invariant separation"));
                separation_text(&mut out, s);
            }
            Report::TvQuotient(s) => {
                let _ = writeln!(out, "{}", style.head("toric variety quotient"));
                separation_text(&mut out, s);
            }
            Report::TpQuotient(t) => {
                let _ = writeln!(out, "{}", style.head("toric prevariety quotient (naive)"));
                let _ = writeln!(out, "  projection: {}", vecs_text(&t.projection));
                for (k, c) in t.system.charts.iter().enumerate() {
                    let _ = writeln!(out, "  chart {k}: {}", cone_text(c));
                }
                for d in &t.system.intersections {
                    let _ = writeln!(out, "  glued ({},{}) along {}", d.i, d.j, cones_text(&d.cones));
                }
                let _ = writeln!(out, "  separated: {}", yes(t.separated));
            }
            Report::Image(r) => {
                let src = match r.map_source {
                    MapSource::File => "given map",
                    MapSource::TvQuotient => "quotient map",
                };
                let _ = writeln!(out, "{}", style.head(&format!("orbit image of the {src}")));
                let _ = writeln!(out, "  matrix: {}", vecs_text(&r.matrix));
                fan_text(&mut out, "target", &r.target);
                let _ = writeln!(out, "  weakly proper: {}", yes(r.weakly_proper));
                if let Some(g) = &r.gap_point {
                    let _ = writeln!(out, "  gap point: {}", vec_text(g));
                }
                let _ = writeln!(out, "  surjective: {}", yes(r.surjective));
                let _ = writeln!(out, "  image open: {}", yes(r.image_open));
                for m in &r.missing_faces {
                    let _ = writeln!(out, "  missing orbit: {}", style.bad(&cone_text(m)));
                }
            }
            Report::Diagnose(d) => {
                let _ = writeln!(out, "{}", style.head("diagnosis"));
                let _ = writeln!(out, "  codimension: {}", d.codim);
                let _ = writeln!(out, "  variety quotient: {}", d.av_quotient);
                let flags = if d.flags.is_empty() { "none".to_string() } else { d.flags.join(", ") };
                let _ = writeln!(out, "  flags: {flags}");
                let _ = write!(out, "  pattern: {}", d.pattern);
                match pattern_note(&d.pattern) {
                    Some(n) => {
                        let _ = writeln!(out, " ({n})");
                    }
                    None => out.push('\n'),
                }
                if let Some(g) = &d.gap_point {
                    let _ = writeln!(out, "  gap point: {}", vec_text(g));
                }
                for m in &d.missing_faces {
                    let _ = writeln!(out, "  missing orbit: {}", cone_text(m));
                }
                for w in &d.glueing {
                    let _ = writeln!(
                        out,
                        "  glueing deficiency at {}: charts {} and {} via {} and {}",
                        cone_text(&w.face),
                        w.i,
                        w.j,
                        cones_text(&w.from_i),
                        cones_text(&w.from_j)
                    );
                }
                let _ = writeln!(out, "  quotient projection: {}", vecs_text(&d.tv_quotient.projection));
                fan_text(&mut out, "quotient fan", &d.tv_quotient.quotient_fan);
            }
            Report::SlicePlot(s) => {
                let _ = writeln!(
                    out,
                    "{}",
                    style.head(&format!("slice of the {} fan at {}·x = {}", s.fan, vec_text(&s.normal), s.level))
                );
                if s.regions.is_empty() {
                    let _ = writeln!(out, "  empty slice");
                }
                for r in &s.regions {
                    let pts: Vec<String> = r.vertices.iter().map(|[a, b]| format!("({a},{b})")).collect();
                    let clip = if r.clipped { " (clipped)" } else { "" };
                    let _ = writeln!(out, "  {}: {}{clip}", r.label, pts.join(" "));
                }
            }
            Report::Examples(e) => {
                for x in &e.examples {
                    let _ = writeln!(out, "{:<14} {}", x.name, x.description);
                }
            }
            Report::Error(e) => error_text(&mut out, e),
        }
        out
    }
}

fn error_text(out: &mut String, e: &ErrorReport) {
    let _ = writeln!(out, "  error ({}): {}", e.kind, e.message);
    if let Some(w) = &e.witness {
        let _ = writeln!(out, "  witness: {}", cone_text(w));
    }
}
