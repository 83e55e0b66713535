use thiserror::Error;

use crate::inverse::{Candidate, SolvabilityVerdict};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("point ({0}, {1}) lies outside the domain")]
    PointOutsideDomain(f64, f64),

    #[error("internal numerical fault: {0}")]
    NumericalFault(String),

    #[error("nu = {nu} is not an eigenvalue for k = {k} (scaled residual {residual:e})")]
    NotAnEigenvalue { nu: f64, k: f64, residual: f64 },

    #[error("nu = {nu} exceeds the enumerated range (nu_max = {nu_max})")]
    OutOfRange { nu: f64, nu_max: f64 },

    #[error("zero denominator in Rayleigh quotient")]
    ZeroDenominator,

    #[error("elevation samples are rank deficient: {0}")]
    RankDeficient(String),

    #[error("inverse recovery is impossible for infinitely deep containers")]
    InfiniteDepth,

    #[error("admissibility window violated: z = {z} must lie in (0, {upper})")]
    AdmissibilityViolation { z: f64, upper: f64 },

    #[error("recovered parameters are inconsistent (disagreement {disagreement:e})")]
    InconsistentRho { disagreement: f64, candidate: Box<Candidate> },

    #[error("interface equation has no root on (0, d) ({verdict:?})")]
    NoRoot { verdict: SolvabilityVerdict },

    #[error("interface equation has {} candidate roots; no unique answer", candidates.len())]
    MultipleRoots { candidates: Vec<Candidate>, verdict: SolvabilityVerdict },

    #[error("measurement outside the minus-system window: {0}")]
    OutsideWindow(String),

    #[error("io: {0}")]
    Io(String),

    #[error("config: {0}")]
    Config(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Stable short tag for machine-parsable one-line reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::Unsupported(_) => "unsupported",
            Error::PointOutsideDomain(..) => "point-outside-domain",
            Error::NumericalFault(_) => "numerical-fault",
            Error::NotAnEigenvalue { .. } => "not-an-eigenvalue",
            Error::OutOfRange { .. } => "out-of-range",
            Error::ZeroDenominator => "zero-denominator",
            Error::RankDeficient(_) => "rank-deficient",
            Error::InfiniteDepth => "infinite-depth",
            Error::AdmissibilityViolation { .. } => "admissibility-violation",
            Error::InconsistentRho { .. } => "inconsistent-rho",
            Error::NoRoot { .. } => "no-root",
            Error::MultipleRoots { .. } => "multiple-roots",
            Error::OutsideWindow(_) => "outside-window",
            Error::Io(_) => "io",
            Error::Config(_) => "config-parse-error",
        }
    }
}
