use thiserror::Error;

/// Errors raised while building or combining the library's objects.
///
/// Validation variants name the violated invariant together with the offending
/// magnitude so that callers (and the CLI) can report them verbatim.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("non-finite entry at {0}")]
    NonFinite(String),

    #[error("not Hermitian: max |M - M^dagger| entry = {0:e}")]
    NotHermitian(f64),

    #[error("not positive semidefinite: min eigenvalue = {0:e}")]
    NotPositive(f64),

    #[error("effect exceeds identity: min eigenvalue of I - a = {0:e}")]
    ExceedsIdentity(f64),

    #[error("zero effect: max entry modulus = {0:e}")]
    ZeroEffect(f64),

    #[error("trace is not 1: got {0}")]
    InvalidTrace(f64),

    #[error("effects do not sum to identity: max deviation = {0:e}")]
    Incomplete(f64),

    #[error("outcome count {0} is below the minimum of 2")]
    TooFewOutcomes(usize),

    #[error("probability component {index} = {value} is outside [0, 1]")]
    ComponentOutOfRange { index: usize, value: f64 },

    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(f64),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("mixing parameter {0} is outside [0, 1]")]
    InvalidLambda(f64),

    #[error("not a permutation: {0:?}")]
    NotPermutation(Vec<usize>),

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("trace tr(rho A_{index}) has imaginary part {imag:e}")]
    ComplexProbability { index: usize, imag: f64 },

    #[error("generator rejected: {0}")]
    Generator(String),

    #[error("sum-form audit failed, condition ({condition}): {detail}")]
    SumFormAudit { condition: &'static str, detail: String },

    #[error("function is defined on {expected} outcomes, distribution has {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("observable is not projective")]
    NotProjective,

    #[error("T has nonzero diagonal: max |T_rr| = {0:e}")]
    NonzeroDiagonal(f64),

    #[error("state is not maximally uncertain: max |rho_rr - 1/d| = {0:e}")]
    NotMaximallyUncertain(f64),

    #[error("alpha = {0} is outside [-1, 1]")]
    InvalidAlpha(f64),

    #[error("cannot parse function specifier {spec:?}: {reason}")]
    FunctionSpec { spec: String, reason: String },

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub fn is_dimension_error(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. } | Error::ArityMismatch { .. }
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
