//! Command execution, independent of argument parsing and output streams.

use num_bigint::BigInt;
use num_rational::BigRational;

use toriq_core::covering::is_weakly_proper;
use toriq_core::exactlin::quotient_projection;
use toriq_core::fans::{validate_fan_map, Fan};
use toriq_core::quotient::{compute_hhat, compute_separation, diagnose, naive_tp_quotient, orbit_image, tv_quotient};
use toriq_core::{Cone, IntVec, QuotientError};

use crate::fixtures;
use crate::problem::{cone_spec, fan_spec, int_vector, parse, Problem, ProblemError};
use crate::report::{
    ErrorReport, ExampleOut, ExamplesReport, HhatReport, ImageReport, MapOut, MapSource, Report, SeparationReport,
    SliceReport, SystemOut, TpReport, ValidateReport,
};
use crate::slice::{self, rational_text};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceFan {
    Source,
    Target,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceArgs {
    pub normal: IntVec,
    pub level: BigRational,
    pub fan: SliceFan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Hhat,
    Separation,
    TvQuotient,
    TpQuotient,
    Image,
    Diagnose,
    SlicePlot(SliceArgs),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub report: Report,
    pub exit: i32,
    /// The drawing produced by a slice plot.
    pub svg: Option<String>,
}

impl Outcome {
    fn ok(report: Report) -> Outcome {
        Outcome { report, exit: EXIT_OK, svg: None }
    }

    fn error(error: ErrorReport, exit: i32) -> Outcome {
        Outcome { report: Report::Error(error), exit, svg: None }
    }
}

/// Exit code for a failed quotient computation: malformed input is a
/// validation failure, everything else is outside what can be decided.
pub fn quotient_exit(e: &QuotientError) -> i32 {
    match e {
        QuotientError::ActionTooLarge { .. }
        | QuotientError::Fan(_)
        | QuotientError::Cone(_)
        | QuotientError::Lin(_) => EXIT_INVALID,
        _ => EXIT_UNSUPPORTED,
    }
}

fn quotient_failure(e: &QuotientError) -> Outcome {
    Outcome::error(ErrorReport::quotient(e), quotient_exit(e))
}

fn problem_failure(e: &ProblemError) -> ErrorReport {
    match e {
        ProblemError::Syntax { .. } => ErrorReport::new("syntax", e.to_string()),
        ProblemError::Shape { .. } => ErrorReport::new("shape", e.to_string()),
        ProblemError::Fan { path, error } => {
            let mut r = ErrorReport::fan(error);
            r.message = format!("{path}: {}", r.message);
            r
        }
        ProblemError::Action(q) => ErrorReport::quotient(q),
    }
}

/// Reads a problem from a file, falling back to the bundled fixture of the
/// same name when no such file exists.
pub fn load(arg: &str) -> Result<String, ErrorReport> {
    let path = std::path::Path::new(arg);
    if path.exists() {
        return std::fs::read_to_string(path).map_err(|e| ErrorReport::new("io", format!("{arg}: {e}")));
    }
    match fixtures::lookup(arg) {
        Some(f) => Ok(f.text.to_string()),
        None => Err(ErrorReport::new("io", format!("{arg}: no such file or bundled example"))),
    }
}

pub fn examples() -> Report {
    Report::Examples(ExamplesReport {
        examples: fixtures::FIXTURES
            .iter()
            .map(|f| ExampleOut { name: f.name.into(), description: f.description.into() })
            .collect(),
    })
}

pub fn parse_normal(s: &str) -> Result<IntVec, ErrorReport> {
    s.split(',')
        .map(|x| x.trim().parse::<BigInt>())
        .collect::<Result<Vec<_>, _>>()
        .map(IntVec::new)
        .map_err(|_| ErrorReport::new("argument", format!("--normal {s:?} is not a comma-separated integer vector")))
}

pub fn parse_level(s: &str) -> Result<BigRational, ErrorReport> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| ErrorReport::new("argument", format!("--level {s:?} is not a rational number")))
}

pub fn run(command: &Command, text: &str) -> Outcome {
    let problem = match parse(text).and_then(|f| f.validate()) {
        Ok(p) => p,
        Err(e) => {
            let error = problem_failure(&e);
            if *command == Command::Validate {
                return Outcome { report: Report::Validate(ValidateReport::invalid(error)), exit: EXIT_INVALID, svg: None };
            }
            return Outcome::error(error, EXIT_INVALID);
        }
    };
    match command {
        Command::Validate => validate(&problem),
        Command::Hhat => hhat(&problem),
        Command::Separation => separation(&problem, false),
        Command::TvQuotient => separation(&problem, true),
        Command::TpQuotient => tp_quotient(&problem),
        Command::Image => image(&problem),
        Command::Diagnose => diagnosis(&problem),
        Command::SlicePlot(args) => slice_plot(&problem, args),
    }
}

fn validate(p: &Problem) -> Outcome {
    let mut report = ValidateReport {
        valid: true,
        fan: p.fan.as_ref().map(fan_spec),
        system: if p.fan.is_none() { Some(SystemOut::of(&p.space)) } else { None },
        cone_count: p.fan.as_ref().map(|f| f.cones().len()),
        sublattice: Some(p.lattice.basis().iter().map(int_vector).collect()),
        map: None,
        error: None,
    };
    if let Some((matrix, target)) = &p.map {
        report.map = Some(match validate_fan_map(matrix, &p.space, target) {
            Ok(m) => MapOut {
                valid: true,
                assignment: (0..p.space.chart_count()).map(|i| cone_spec(m.assigned(i))).collect(),
                error: None,
            },
            Err(e) => {
                report.valid = false;
                MapOut { valid: false, assignment: Vec::new(), error: Some(ErrorReport::fan(&e)) }
            }
        });
    }
    let exit = if report.valid { EXIT_OK } else { EXIT_INVALID };
    Outcome { report: Report::Validate(report), exit, svg: None }
}

fn hhat(p: &Problem) -> Outcome {
    let result = p.action().and_then(|a| {
        let h = compute_hhat(&a)?;
        let projection = quotient_projection(a.ambient_rank(), &h.lattice)?;
        Ok(HhatReport::of(&h, &projection))
    });
    match result {
        Ok(r) => Outcome::ok(Report::Hhat(r)),
        Err(e) => quotient_failure(&e),
    }
}

fn separation(p: &Problem, tv: bool) -> Outcome {
    let result = p.action().and_then(|a| if tv { tv_quotient(&a) } else { compute_separation(&a) });
    match result {
        Ok(s) if tv => Outcome::ok(Report::TvQuotient(SeparationReport::of(&s))),
        Ok(s) => Outcome::ok(Report::Separation(SeparationReport::of(&s))),
        Err(e) => quotient_failure(&e),
    }
}

fn tp_quotient(p: &Problem) -> Outcome {
    match p.action().and_then(|a| naive_tp_quotient(&a)) {
        Ok(t) => Outcome::ok(Report::TpQuotient(TpReport::of(&t))),
        Err(e) => quotient_failure(&e),
    }
}

fn image(p: &Problem) -> Outcome {
    let (source, matrix, target) = match &p.map {
        Some((m, t)) => (MapSource::File, m.clone(), t.clone()),
        None => match p.action().and_then(|a| tv_quotient(&a)) {
            Ok(s) => (MapSource::TvQuotient, s.projection, s.quotient_fan),
            Err(e) => return quotient_failure(&e),
        },
    };
    let map = match validate_fan_map(&matrix, &p.space, &target) {
        Ok(m) => m,
        Err(e) => return Outcome::error(ErrorReport::fan(&e), EXIT_INVALID),
    };
    let proper = is_weakly_proper(&map);
    let report = orbit_image(&map);
    Outcome::ok(Report::Image(ImageReport::of(source, &matrix, &target, &proper, &report)))
}

fn diagnosis(p: &Problem) -> Outcome {
    match p.action().and_then(|a| diagnose(&a)) {
        Ok(d) => Outcome::ok(Report::Diagnose(crate::report::DiagnoseReport::of(&d))),
        Err(e) => quotient_failure(&e),
    }
}

fn slice_plot(p: &Problem, args: &SliceArgs) -> Outcome {
    let (name, cones): (&str, Vec<(String, Cone)>) = match args.fan {
        SliceFan::Source => (
            "source",
            p.space.charts().iter().enumerate().map(|(k, c)| (format!("chart {k}"), c.clone())).collect(),
        ),
        SliceFan::Target => {
            let fan: Fan = match &p.map {
                Some((_, t)) => t.clone(),
                None => match p.action().and_then(|a| tv_quotient(&a)) {
                    Ok(s) => s.quotient_fan,
                    Err(e) => return quotient_failure(&e),
                },
            };
            (
                "target",
                fan.maximal_cones().iter().enumerate().map(|(k, c)| (format!("cone {k}"), c.clone())).collect(),
            )
        }
    };
    let s = match slice::slice(&cones, &args.normal, &args.level) {
        Ok(s) => s,
        Err(e) => return Outcome::error(ErrorReport::new("slice", e.to_string()), EXIT_INVALID),
    };
    let normal = int_vector(&args.normal);
    let title = format!("{name} fan at {}·x = {}", args.normal, rational_text(&args.level));
    let svg = slice::svg(&s, &title);
    let report = SliceReport {
        fan: name.into(),
        normal,
        level: rational_text(&args.level),
        axes: s.axes,
        regions: slice::regions_out(&s),
    };
    Outcome { report: Report::SlicePlot(report), exit: EXIT_OK, svg: Some(svg) }
}
