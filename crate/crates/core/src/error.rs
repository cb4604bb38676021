use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole at s = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("accuracy {tol:e} unreachable with at most {max_terms} correction terms")]
    AccuracyUnreachable { tol: f64, max_terms: usize },

    #[error("denominator {magnitude:e} below the near-zero guard")]
    NearZeroDenominator { magnitude: f64 },

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("no sign change of {function} on [{lo}, {hi}]")]
    BracketFailure {
        function: &'static str,
        lo: f64,
        hi: f64,
    },

    #[error("could not reconcile zero count in [{lo}, {hi}]: expected {expected}, found {found}")]
    UnresolvedCount {
        lo: f64,
        hi: f64,
        expected: usize,
        found: usize,
    },

    #[error("size guard exceeded: {value} > {limit}")]
    SizeGuard { value: f64, limit: f64 },

    #[error("series width exceeded: requested {requested}, available {available}")]
    WidthExceeded { requested: usize, available: usize },

    #[error("series has a zero leading coefficient")]
    ZeroLeadingCoefficient,

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
