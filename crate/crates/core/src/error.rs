use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("monomial exponent overflow")]
    ExponentOverflow,

    #[error("{0} is not a prime in [2, 2^31 - 1]")]
    NotPrime(u64),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("polynomials belong to different rings")]
    RingMismatch,

    #[error("Buchberger step cap exceeded after {steps} pair reductions")]
    CapExceeded { steps: usize },

    #[error("operation is undefined for the unit ideal")]
    UnitIdeal,

    #[error("ideal is not m-primary: {0}")]
    NotMPrimary(String),

    #[error("ideal is not stable under Frobenius: generator {generator} has p-th power outside the ideal")]
    NotFStable { generator: String },

    #[error("not a parameter ideal: {0}")]
    NotParameterIdeal(String),

    #[error("closure certificate is inconclusive (no stabilization up to e = {e_max})")]
    Inconclusive { e_max: u32 },

    #[error("exponent search exhausted at e_max = {e_max}; the exponent is at least {lower_bound}")]
    ExponentSearchExhausted { e_max: u32, lower_bound: u32 },

    #[error("no filter regular element found for position {position} after {attempts} attempts (partial sequence: [{}])", partial.join(", "))]
    SopAttemptsExhausted {
        position: usize,
        attempts: usize,
        partial: Vec<String>,
    },

    #[error("finite quotient exceeds cap of {cap}")]
    QuotientTooLarge { cap: u128 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code, printed by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable { .. } => "unknown_variable",
            Error::ExponentOverflow => "exponent_overflow",
            Error::NotPrime(_) => "not_prime",
            Error::InvalidRing(_) => "invalid_ring",
            Error::RingMismatch => "ring_mismatch",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::UnitIdeal => "unit_ideal",
            Error::NotMPrimary(_) => "not_m_primary",
            Error::NotFStable { .. } => "not_f_stable",
            Error::NotParameterIdeal(_) => "not_parameter_ideal",
            Error::Inconclusive { .. } => "inconclusive",
            Error::ExponentSearchExhausted { .. } => "exponent_search_exhausted",
            Error::SopAttemptsExhausted { .. } => "sop_attempts_exhausted",
            Error::QuotientTooLarge { .. } => "quotient_too_large",
            Error::Precondition(_) => "precondition",
            Error::InvariantViolation(_) => "invariant_violation",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidArgument(e.to_string())
    }
}
