use alloc::string::String;

use crate::cones::Cone;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("{len} entries do not form a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("sublattice is not saturated")]
    NotSaturated,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("vector of length {found} in a lattice of rank {expected}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("cone is not strictly convex (lineality rank {lineality_rank})")]
    NotStrictlyConvex { lineality_rank: usize },
    #[error("cone is not contained in the given cone")]
    NotContained,
    #[error(transparent)]
    Lin(#[from] LinError),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    #[error("cone {index} is not strictly convex")]
    NotStrictlyConvex { index: usize, cone: Cone },
    #[error("cones {first} and {second} meet in {intersection}, which is not a face of both")]
    FanConditionViolation {
        first: usize,
        second: usize,
        intersection: Cone,
    },
    #[error("intersection data ({i},{j}) and ({j},{i}) disagree")]
    SymmetryViolation { i: usize, j: usize },
    #[error("cone {cone} of the glueing fan ({i},{j}) is not a common face of charts {i} and {j}")]
    NotCommonFace { i: usize, j: usize, cone: Cone },
    #[error("cone {cone} lies in the glueing fans ({i},{j}) and ({j},{k}) but not in ({i},{k})")]
    TripleConditionViolation {
        i: usize,
        j: usize,
        k: usize,
        cone: Cone,
    },
    #[error("intersection data refers to chart {index}, but there are only {charts} charts")]
    UnknownChart { index: usize, charts: usize },
    #[error("glueing fan for chart {index} with itself is implied and must not be given")]
    SelfIntersection { index: usize },
    #[error("ambient rank mismatch: expected {expected}, found {found}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("the image of cone {cone} of chart {chart} lies in no target cone")]
    NoTargetCone { chart: usize, cone: Cone },
    #[error("a fan needs at least one cone")]
    Empty,
    #[error(transparent)]
    Lin(#[from] LinError),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("ambient rank mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the pieces do not cover the cone")]
    NotACover,
    #[error("piece {index} is not contained in the cone")]
    PieceOutside { index: usize },
    #[error("the cone must be strictly convex")]
    NotStrictlyConvex,
    #[error("face index out of range for the given cone")]
    InvalidFace,
    #[error(transparent)]
    Lin(#[from] LinError),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("the acting sublattice has rank {rank} in a lattice of rank {ambient}")]
    ActionTooLarge { rank: usize, ambient: usize },
    #[error("the union of projected charts in class {class} is not a strictly convex cone")]
    ClassUnionNotStrictlyConvex { class: usize },
    #[error("the projected charts of class {class} do not fill their convex hull")]
    ClassUnionNotConvex { class: usize },
    #[error("class cones {first} and {second} violate the fan condition")]
    FanConditionViolation { first: usize, second: usize },
    #[error("chain condition fails over the quotient face {face}")]
    ChainConditionFailure { face: Cone, components: usize },
    #[error("unsupported in codimension {codim}: {reason}")]
    UnsupportedCodimension { codim: usize, reason: String },
    #[error("the operation needs a separated space given by a fan")]
    NotAFan,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Lin(#[from] LinError),
}
