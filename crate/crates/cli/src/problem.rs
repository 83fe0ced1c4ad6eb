//! The JSON problem file format.
//!
//! ```json
//! {
//!   "lattice_rank": 2,
//!   "maximal_cones": [[[1, 0]], [[0, 1]]],
//!   "sublattice": [[1, -1]],
//!   "map": {"matrix": [[1, 1]], "target": {"lattice_rank": 1, "maximal_cones": [[[1]]]}}
//! }
//! ```
//!
//! A system of fans replaces `maximal_cones` by `charts` and `intersections`.
//! Integers are JSON numbers when they are exactly representable as IEEE
//! doubles and decimal strings otherwise.

use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use toriq_core::fans::{validate_fan, validate_system, AffineSystemOfFans, Fan, Intersection};
use toriq_core::quotient::SubtorusAction;
use toriq_core::{Cone, FanError, IntMat, IntVec, QuotientError, Sublattice};

/// Largest magnitude written as a JSON number, `2^53 - 1`.
const EXACT_LIMIT: i64 = (1 << 53) - 1;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) if x.abs() <= EXACT_LIMIT => s.serialize_i64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = Int;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, x: i64) -> Result<Int, E> {
                if x.abs() > EXACT_LIMIT {
                    return Err(E::custom(format!("{x} is not exact as a JSON number; write it as a string")));
                }
                Ok(Int(x.into()))
            }

            fn visit_u64<E: de::Error>(self, x: u64) -> Result<Int, E> {
                if x > EXACT_LIMIT as u64 {
                    return Err(E::custom(format!("{x} is not exact as a JSON number; write it as a string")));
                }
                Ok(Int(x.into()))
            }

            fn visit_f64<E: de::Error>(self, x: f64) -> Result<Int, E> {
                Err(E::custom(format!("{x} is not an exact integer; write large integers as strings")))
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Int, E> {
                let digits = s.strip_prefix('-').unwrap_or(s);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(E::custom(format!("{s:?} is not a decimal integer")));
                }
                s.parse().map(Int).map_err(|_| E::custom(format!("{s:?} is not a decimal integer")))
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

pub type Vector = Vec<Int>;
/// A cone written by its generators.
pub type ConeSpec = Vec<Vector>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpec {
    pub lattice_rank: usize,
    pub maximal_cones: Vec<ConeSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionSpec {
    pub i: usize,
    pub j: usize,
    pub cones: Vec<ConeSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub matrix: Vec<Vector>,
    pub target: FanSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub lattice_rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maximal_cones: Option<Vec<ConeSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charts: Option<Vec<ConeSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersections: Option<Vec<IntersectionSpec>>,
    #[serde(default)]
    pub sublattice: Vec<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapSpec>,
}

/// Why a problem file was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemError {
    /// Malformed JSON or a schema mismatch, with the field path and position.
    Syntax { path: String, line: usize, column: usize, message: String },
    /// Well-formed but inconsistent data, such as vectors of the wrong length.
    Shape { path: String, message: String },
    /// The cones do not form a fan or system.
    Fan { path: String, error: FanError },
    /// The sublattice cannot act.
    Action(QuotientError),
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            ProblemError::Syntax { path, line, column, message } => {
                write!(f, "line {line}, column {column}")?;
                if !path.is_empty() && path != "." {
                    write!(f, ", at {path}")?;
                }
                write!(f, ": {message}")
            }
            ProblemError::Shape { path, message } => write!(f, "{path}: {message}"),
            ProblemError::Fan { path, error } => write!(f, "{path}: {error}"),
            ProblemError::Action(e) => write!(f, "sublattice: {e}"),
        }
    }
}

impl std::error::Error for ProblemError {}

pub fn parse(text: &str) -> Result<ProblemFile, ProblemError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let file: ProblemFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        ProblemError::Syntax {
            path,
            line: inner.line(),
            column: inner.column(),
            message: strip_position(&inner.to_string()),
        }
    })?;
    de.end().map_err(|e| ProblemError::Syntax {
        path: String::new(),
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    Ok(file)
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(k) => message[..k].to_string(),
        None => message.to_string(),
    }
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub file: ProblemFile,
    pub space: AffineSystemOfFans,
    /// Present when the input was given as a fan.
    pub fan: Option<Fan>,
    pub lattice: Sublattice,
    pub map: Option<(IntMat, Fan)>,
}

impl Problem {
    pub fn action(&self) -> Result<SubtorusAction, QuotientError> {
        match &self.fan {
            Some(fan) => SubtorusAction::on_fan(fan, &self.lattice),
            None => SubtorusAction::new(self.space.clone(), &self.lattice),
        }
    }
}

fn shape(path: impl Into<String>, message: impl Into<String>) -> ProblemError {
    ProblemError::Shape { path: path.into(), message: message.into() }
}

pub fn to_vec(path: &str, n: usize, v: &[Int]) -> Result<IntVec, ProblemError> {
    if v.len() != n {
        return Err(shape(path, format!("expected {n} entries, found {}", v.len())));
    }
    Ok(IntVec::new(v.iter().map(|x| x.0.clone()).collect()))
}

pub fn to_cone(path: &str, n: usize, gens: &[Vector]) -> Result<Cone, ProblemError> {
    let gens = gens
        .iter()
        .enumerate()
        .map(|(k, g)| to_vec(&format!("{path}[{k}]"), n, g))
        .collect::<Result<Vec<_>, _>>()?;
    Cone::from_generators(n, &gens).map_err(|e| shape(path, e.to_string()))
}

fn to_cones(path: &str, n: usize, cones: &[ConeSpec]) -> Result<Vec<Cone>, ProblemError> {
    cones
        .iter()
        .enumerate()
        .map(|(k, c)| to_cone(&format!("{path}[{k}]"), n, c))
        .collect()
}

pub fn to_fan(path: &str, spec: &FanSpec) -> Result<Fan, ProblemError> {
    let sub = |field: &str| if path.is_empty() { field.to_string() } else { format!("{path}.{field}") };
    let cones = to_cones(&sub("maximal_cones"), spec.lattice_rank, &spec.maximal_cones)?;
    validate_fan(spec.lattice_rank, &cones).map_err(|error| ProblemError::Fan { path: sub("maximal_cones"), error })
}

fn to_matrix(path: &str, cols: usize, rows: &[Vector]) -> Result<IntMat, ProblemError> {
    let rows = rows
        .iter()
        .enumerate()
        .map(|(k, r)| to_vec(&format!("{path}[{k}]"), cols, r))
        .collect::<Result<Vec<_>, _>>()?;
    IntMat::from_rows(cols, &rows).map_err(|e| shape(path, e.to_string()))
}

impl ProblemFile {
    pub fn validate(&self) -> Result<Problem, ProblemError> {
        let n = self.lattice_rank;
        let (space, fan) = match (&self.maximal_cones, &self.charts) {
            (Some(cones), None) => {
                if self.intersections.is_some() {
                    return Err(shape("intersections", "only allowed together with charts"));
                }
                let fan = to_fan("", &FanSpec { lattice_rank: n, maximal_cones: cones.clone() })?;
                (fan.as_system(), Some(fan))
            }
            (None, Some(charts)) => {
                let charts = to_cones("charts", n, charts)?;
                let mut glue = Vec::new();
                for (k, d) in self.intersections.iter().flatten().enumerate() {
                    let cones = to_cones(&format!("intersections[{k}].cones"), n, &d.cones)?;
                    glue.push(Intersection { i: d.i, j: d.j, cones });
                }
                let space = validate_system(n, &charts, &glue)
                    .map_err(|error| ProblemError::Fan { path: "charts".into(), error })?;
                (space, None)
            }
            (Some(_), Some(_)) => return Err(shape("charts", "give either maximal_cones or charts, not both")),
            (None, None) => return Err(shape("maximal_cones", "missing; give maximal_cones or charts")),
        };
        let gens = self
            .sublattice
            .iter()
            .enumerate()
            .map(|(k, g)| to_vec(&format!("sublattice[{k}]"), n, g))
            .collect::<Result<Vec<_>, _>>()?;
        let lattice = Sublattice::span(n, &gens).map_err(|e| shape("sublattice", e.to_string()))?;
        let map = match &self.map {
            None => None,
            Some(m) => {
                let target = to_fan("map.target", &m.target)?;
                if m.matrix.len() != m.target.lattice_rank {
                    return Err(shape(
                        "map.matrix",
                        format!("expected {} rows, found {}", m.target.lattice_rank, m.matrix.len()),
                    ));
                }
                Some((to_matrix("map.matrix", n, &m.matrix)?, target))
            }
        };
        let problem = Problem { file: self.clone(), space, fan, lattice, map };
        problem.action().map_err(ProblemError::Action)?;
        Ok(problem)
    }
}

pub fn int_vector(v: &IntVec) -> Vector {
    v.entries().iter().cloned().map(Int).collect()
}

/// Generators of a cone: its rays, then a basis of its lineality space and
/// the negatives of that basis.
pub fn cone_spec(c: &Cone) -> ConeSpec {
    c.generators().iter().map(int_vector).collect()
}

pub fn fan_spec(f: &Fan) -> FanSpec {
    FanSpec {
        lattice_rank: f.ambient_rank(),
        maximal_cones: f.maximal_cones().iter().map(cone_spec).collect(),
    }
}

pub fn matrix_spec(m: &IntMat) -> Vec<Vector> {
    m.row_vecs().iter().map(int_vector).collect()
}
