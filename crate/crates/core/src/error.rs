use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("coefficient {0} is not an integer")]
    NonIntegral(String),

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("linear form is identically zero")]
    ZeroForm,

    #[error("invalid rational {input:?}: {reason}")]
    InvalidRational { input: String, reason: String },

    #[error("invalid linear form {0:?}")]
    InvalidForm(String),

    #[error("orbit {orbit:?} carries two different coefficients: {first} and {second}")]
    SymmetryViolation {
        orbit: Vec<u32>,
        first: String,
        second: String,
    },

    #[error("fixture {name}: {reason}")]
    Fixture { name: &'static str, reason: String },

    #[error("unexpected degeneration: {0}")]
    Degeneration(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0}")]
    Domain(String),

    #[error("construction cross-check failed: {0}")]
    Construction(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
