use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the engine.
///
/// Every variant maps onto one of the CLI exit classes through
/// [`Error::exit_code`]: parse problems, resource caps, and everything else
/// (domain errors).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("variable index {index} out of range for {num_vars} variables")]
    IndexOutOfRange { index: usize, num_vars: usize },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("input is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("unsupported degree: {0}")]
    UnsupportedDegree(String),

    #[error("unsupported characteristic: {0}")]
    UnsupportedCharacteristic(String),

    #[error("the ideal is the whole ring")]
    UnitIdeal,

    #[error("inner tuple is not a regular sequence")]
    NotRegular,

    #[error("generic initial ideal did not stabilize after {trials} trials")]
    UnstableGin { trials: usize },

    #[error("no witness defined over the coefficient field: {0}")]
    NoRationalWitness(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A mathematically guaranteed postcondition failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// CLI exit code: 1 domain error, 2 parse error, 3 resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::ResourceCap(_) => 3,
            _ => 1,
        }
    }
}
