use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("exponent has {found} variables, ring has {expected}")]
    Dimension { expected: usize, found: usize },

    #[error("ring context mismatch")]
    ContextMismatch,

    #[error("the zero polynomial has no leading form or initial exponent")]
    ZeroPolynomial,

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("modulus {0} is not a prime below 2^31")]
    NonPrimeModulus(u64),

    #[error("duplicate section `{0}`")]
    DuplicateSection(String),

    #[error("generator `{0}` has order 0: it is a unit of the local ring, generators must lie in the maximal ideal")]
    UnitGenerator(String),

    #[error("divisor list contains the zero polynomial")]
    ZeroDivisor,

    #[error("truncation degree {given} is below the required safety margin {required}")]
    TruncationTooLow { given: u32, required: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource guardrail exceeded: {0}")]
    Resource(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
