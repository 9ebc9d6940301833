use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grade {0} is outside [0, 1]")]
    GradeOutOfRange(String),
    #[error("grade {0} must lie in (0, 1]")]
    NonPositiveGrade(String),
    #[error("invalid universe: {0}")]
    InvalidUniverse(String),
    #[error("invalid parameter set: {0}")]
    InvalidParameters(String),
    #[error("operands live on different universes")]
    UniverseMismatch,
    #[error("operands carry different parameter sets")]
    ParameterMismatch,
    #[error("parameter sets have empty intersection")]
    EmptyParameterIntersection,
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("alpha must lie in (0, 1], got {0}")]
    InvalidAlpha(String),
    #[error("alpha {0} is not a level of the grid")]
    OffGridAlpha(String),
    #[error("invalid alpha grid: {0}")]
    InvalidGrid(String),
    #[error("operands use different alpha grids")]
    GridMismatch,
    #[error("invalid fuzzy real: {0}")]
    InvalidFuzzyReal(String),
    #[error("triangular parameters must satisfy a <= b <= c, got ({0}, {1}, {2})")]
    InvalidTriangle(String, String, String),
    #[error("divisor cut at alpha {alpha} contains zero: [{lower}, {upper}]")]
    DivisionByIntervalContainingZero {
        alpha: String,
        lower: String,
        upper: String,
    },
    #[error("fuzzy soft points are not distinct")]
    NotDistinct,
    #[error("unknown law `{0}`; expected demorgan, maplaws, identities, normaxioms, slices or hausdorff")]
    UnknownLaw(String),
    #[error("unknown strategy `{0}`; expected max-min or weighted-sum")]
    UnknownStrategy(String),
    #[error("unknown p-norm `{0}`; expected 1, 2 or inf")]
    UnknownNorm(String),
    #[error("invalid weight {0}: norm weights must be positive and finite")]
    InvalidWeight(String),
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(String),
    #[error("invalid contraction: {0}")]
    InvalidContraction(String),
    #[error("contraction violated at step {step}: observed ratio {ratio} exceeds k = {k}")]
    ContractionViolated { step: usize, ratio: String, k: String },
    #[error("subsequence indices must be strictly increasing and in range: {0}")]
    InvalidSubsequence(String),
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("invalid mapping: {0}")]
    InvalidMapping(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("cell {cell}: {message}")]
    InvalidCell { cell: String, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid expression at offset {offset}: {message}")]
    Expression { offset: usize, message: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
}
