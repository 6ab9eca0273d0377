//! Error types shared by the library modules.

use thiserror::Error;

/// Errors from metric-space validation and the basic ratio operations.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum MetricError {
    #[error("matrix is not square: row {row} has {got} entries, expected {expected}")]
    NotSquare { row: usize, got: usize, expected: usize },
    #[error("label count {labels} does not match matrix size {matrix}")]
    LabelMismatch { labels: usize, matrix: usize },
    #[error("non-finite distance at ({i},{j})")]
    NonFinite { i: usize, j: usize },
    #[error("nonzero diagonal entry at index {i}")]
    NonzeroDiagonal { i: usize },
    #[error("dist[{i}][{j}] != dist[{j}][{i}]")]
    SymmetryError { i: usize, j: usize },
    #[error("zero off-diagonal distance between {i} and {j} (duplicate points rejected)")]
    ZeroOffDiagonal { i: usize, j: usize },
    #[error("triangle inequality violated on ({i},{j},{k}): d({i},{k}) > d({i},{j}) + d({j},{k})")]
    TriangleViolation { i: usize, j: usize, k: usize },
    #[error("negative distance at ({i},{j})")]
    NegativeDistance { i: usize, j: usize },
    #[error("subset index {index} out of range for a {size}-point space")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("duplicate subset index {index}")]
    DuplicateIndex { index: usize },
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("operation needs at least {need} points, got {got}")]
    TooSmall { need: usize, got: usize },
    #[error("spaces have different sizes ({a} vs {b}) or the map is not a bijection")]
    SizeMismatch { a: usize, b: usize },
}

/// Errors from HST and lacunary-sequence operations.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum HstError {
    #[error("tree has {got} leaves, need at least {need}")]
    TooFewLeaves { need: usize, got: usize },
    #[error("invalid HST: {0}")]
    InvalidTree(String),
    #[error("sequence is not {k}-lacunary at position {position}")]
    NotLacunary { k: f64, position: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

/// Errors from the extraction algorithms.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum ExtractError {
    #[error("input needs at least {need} points, got {got}")]
    TooSmall { need: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("input sequence violates prefix dominance: a[{j}] > 2*a[{i}]")]
    PrefixDominanceViolated { i: usize, j: usize },
    #[error("tree is not k-increasing")]
    NotIncreasing,
    #[error("alpha must exceed 2, got {alpha}")]
    AlphaTooSmall { alpha: f64 },
    #[error("triple ({i},{j},{k}) has aspect ratio {phi} < {required}")]
    TripleTooFlat { i: usize, j: usize, k: usize, phi: f64, required: f64 },
    #[error("k must exceed 2, got {k}")]
    KTooSmall { k: f64 },
    #[error("tree is not binary (max out-degree {got})")]
    NotBinary { got: usize },
    #[error("tree separation {got} is below the required {need}")]
    SeparationTooSmall { got: f64, need: f64 },
    #[error("certificate mismatch: {0}")]
    CertMismatch(String),
    #[error("coloring is incomplete or out of range: {0}")]
    IncompleteColoring(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Hst(#[from] HstError),
}

/// Errors from instance generation and the composition structure checkers.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum InstanceError {
    #[error("degenerate composition factor: {0}")]
    DegenerateFactor(String),
    #[error("composition power would have {points} points, above cap {cap}")]
    SizeCapExceeded { points: usize, cap: usize },
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("no diameter-2 graph found within {tries} tries")]
    TriesExhausted { tries: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("copy structure impossible under the hypothesis (points {a},{b} share a copy while {c} does not)")]
    HypothesisViolated { a: usize, b: usize, c: usize },
    #[error("four-point inequality violated by ({x1},{x2} | {x3},{x4})")]
    FourPointViolation { x1: usize, x2: usize, x3: usize, x4: usize },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Hst(#[from] HstError),
}

/// Errors from the exact oracles.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum OracleError {
    #[error("instance size {got} exceeds the {cap_name} cap {cap}")]
    CapExceeded { cap_name: &'static str, cap: usize, got: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
}
