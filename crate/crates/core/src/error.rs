use std::fmt;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("element {0} is not invertible")]
    NotInvertible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields: {0} and {1}")]
    IncompatibleFields(String, String),
    #[error("{0} is not a supported prime modulus")]
    InvalidModulus(u64),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("variable layouts do not match")]
    LayoutMismatch,
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown block `{0}`")]
    UnknownBlock(String),
    #[error("no value assigned to variable index {0}")]
    MissingAssignment(usize),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("minor size {k} is out of range for a {rows}x{cols} matrix")]
    MinorSizeOutOfRange { k: usize, rows: usize, cols: usize },

    #[error("the ideal has no generators")]
    EmptyIdeal,
    #[error("cannot saturate by the zero polynomial")]
    ZeroSaturator,
    #[error("generator {0} is not homogeneous")]
    InhomogeneousGenerator(usize),
    #[error("Groebner basis post-check failed: {0}")]
    BasisCheckFailed(String),

    #[error("the variety is degenerate: {0}")]
    DegenerateVariety(String),
    #[error("coefficient matrix must have full row rank {expected}, found {found}")]
    RankDeficientCoefficients { expected: usize, found: usize },
    #[error("del Pezzo surfaces are supported for 1 <= t <= 4, got t = {0}")]
    DelPezzoRange(usize),
    #[error("expected generic Jacobian rank {expected}, found {found}")]
    GenericRankMismatch { expected: usize, found: usize },
    #[error("invalid variety description: {0}")]
    InvalidVariety(String),

    #[error("r = {r} is outside the admissible range {range}")]
    InadmissibleR { r: usize, range: String },
    #[error("point {0} is a singular point of the variety")]
    SingularPoint(usize),
    #[error("point {0} does not lie on the variety")]
    PointNotOnVariety(usize),
    #[error("invalid point configuration: {0}")]
    InvalidConfiguration(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown family or configuration: {0}")]
    UnknownFamily(String),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("toml error: {0}")]
    Toml(#[from] toml::de::Error),
}

/// Coarse classification used to pick a process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// A mathematical precondition was violated.
    Precondition,
    /// Malformed input or an I/O failure.
    Input,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_)
            | Error::UnknownVariable(_)
            | Error::UnknownBlock(_)
            | Error::UnknownFamily(_)
            | Error::UnknownSuite(_)
            | Error::InvalidVariety(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::Toml(_) => ErrorKind::Input,
            _ => ErrorKind::Precondition,
        }
    }

    pub(crate) fn parse(msg: impl fmt::Display) -> Self {
        Error::Parse(msg.to_string())
    }
}
