use thiserror::Error;

/// Errors produced by the distribution, fitting and data layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("{func} did not converge after {iterations} iterations")]
    Convergence { func: &'static str, iterations: usize },

    #[error("unknown family '{0}'")]
    UnknownFamily(String),

    #[error("unknown base distribution '{0}'")]
    UnknownBase(String),

    #[error("expected {expected} parameters, got {got}")]
    ParamLength { expected: usize, got: usize },

    #[error("parameter {index} = {value} is outside its domain {domain}")]
    ParamDomain {
        index: usize,
        value: f64,
        domain: String,
    },

    #[error("infeasible start: objective is -inf at the initial point")]
    InfeasibleStart,

    #[error("fit failed: {0}")]
    FitFailed(String),

    #[error("line {line}: cannot parse '{token}' as a number")]
    Parse { line: usize, token: String },

    #[error("need at least {needed} observations, got {got}")]
    TooFewObservations { needed: usize, got: usize },

    #[error("unknown dataset '{0}'")]
    UnknownDataset(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
