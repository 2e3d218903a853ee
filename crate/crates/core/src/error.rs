use thiserror::Error;

use crate::complex::SimplexId;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate toplex {0:?}")]
    DuplicateToplex(Vec<usize>),
    #[error("toplex {0:?} is empty or repeats a vertex")]
    MalformedToplex(Vec<usize>),
    #[error("vertex id {vertex} out of range (complex has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("coordinate dimension mismatch: expected {expected}, found {found} at vertex {vertex}")]
    CoordinateDimension { expected: usize, found: usize, vertex: usize },
    #[error("the complex has no geometric realization")]
    MissingCoordinates,
    #[error("convex hulls are only supported in dimension 1 and 2, got {0}")]
    UnsupportedDimension(usize),
    #[error("the polytope of the complex is not convex")]
    NonConvexPolytope,
    #[error("convex hull of an empty set")]
    EmptySet,
    #[error("toplexes must all have dimension {expected}, found a toplex of dimension {found}")]
    MixedDimension { expected: usize, found: usize },
    #[error("threshold {0} outside [0, 1]")]
    ThresholdOutOfRange(f64),
    #[error("frequency table was built over a different complex")]
    ForeignTable,
    #[error("simplex {0} appears in more than one multivector")]
    Overlap(SimplexId),
    #[error("simplex {0} is not covered by any multivector")]
    Omission(SimplexId),
    #[error("multivector {part} is not orderly convex: {lower} <= {middle} <= {upper} with {middle} missing")]
    NotConvex {
        part: usize,
        lower: SimplexId,
        middle: SimplexId,
        upper: SimplexId,
    },
    #[error("map does not preserve the face relation: {face} <= {coface} but images are not comparable")]
    NotOrderPreserving { face: SimplexId, coface: SimplexId },
    #[error("fields or maps are defined on complexes of different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("expected {expected} vectors, found {found}")]
    VectorCount { expected: usize, found: usize },
    #[error("assignment violates m[s] >= s at simplex {0}")]
    AssignmentNotCoface(SimplexId),
    #[error("Morse set {set} of step {step} is not contained in a single Morse set of the next step")]
    RefinementViolation { step: usize, set: usize },
    #[error("subcomplex is not closed or not contained in the complex")]
    InvalidSubcomplex,
    #[error("persistence module shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("arrow {0} is not forward")]
    OrientationMismatch(usize),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("vertex ({x}, {y}) lies on the pole of the vector field")]
    Pole { x: f64, y: f64 },
    #[error("threshold levels must be strictly decreasing")]
    LevelsNotDecreasing,
    #[error("parameter list is empty")]
    EmptyParameterList,
    #[error("degenerate region")]
    DegenerateRegion,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
