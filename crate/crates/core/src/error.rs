use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial: {0}")]
    ZeroPolynomial(&'static str),

    #[error("overflow: {0}")]
    Overflow(&'static str),

    #[error("invalid indicator class: residue {residue}, modulus {modulus}")]
    InvalidClass { residue: u64, modulus: u64 },

    #[error("modulus {target} is not a multiple of {modulus}")]
    NotMultiple { modulus: u64, target: u64 },

    /// An atom argument or exponent leaves its admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("invalid recurrence operator: {0}")]
    InvalidOperator(&'static str),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Lower(#[from] LowerError),

    #[error("json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Reasons an expression cannot be written as a hypergeometric-type term.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowerError {
    #[error("argument of {0} is not affine in the index variable")]
    NonAffineArgument(&'static str),

    #[error("divisor is not a single hypergeometric monomial")]
    NonMonomialDivisor,

    #[error("support integrality violated: {0}")]
    SupportIntegrality(String),

    #[error("pole on the support: {0}")]
    Pole(String),

    #[error("unsupported construct: {0}")]
    Unsupported(String),
}

impl Error {
    /// Whether the error comes from reading or lowering input rather than evaluating it.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Lower(_) | Error::Json(_) | Error::InvalidClass { .. })
    }
}
