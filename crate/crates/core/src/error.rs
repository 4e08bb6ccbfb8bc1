use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index {index} out of range (limit {limit})")]
    Index { index: usize, limit: usize },

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("parameter {0} is at infinity with respect to the chart")]
    PointAtInfinity(String),

    #[error("expected a subset of size {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("underdetermined instance: {n} points do not span dimension {d}")]
    Underdetermined { n: usize, d: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate complex: {0}")]
    DegenerateComplex(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code, used in structured error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::Index { .. } => "index",
            Error::InvalidChart(_) => "invalid_chart",
            Error::PointAtInfinity(_) => "point_at_infinity",
            Error::Arity { .. } => "arity",
            Error::InvalidInstance(_) => "invalid_instance",
            Error::InvalidDecomposition(_) => "invalid_decomposition",
            Error::InvalidComposition(_) => "invalid_composition",
            Error::Underdetermined { .. } => "underdetermined",
            Error::Domain(_) => "domain",
            Error::DegenerateComplex(_) => "degenerate_complex",
            Error::Precondition(_) => "precondition",
            Error::Parse(_) => "parse",
        }
    }
}
