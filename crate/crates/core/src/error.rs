use thiserror::Error;

/// Errors raised by the library. Verification failures are never errors; they
/// are recorded as failing checks inside a [`crate::SuiteReport`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite component in {0}")]
    NonFinite(&'static str),
    #[error("product a·ā has a vector remainder of {remainder:e}")]
    NonScalar { remainder: f64 },
    #[error("symmetrized mirrored product leaves {remainder:e} outside the e0 channel")]
    NonScalarMetric { remainder: f64 },
    #[error("exponential series did not converge: tail {tail:e} after {terms} terms")]
    NonConvergence { terms: usize, tail: f64 },
    #[error("null vector part in exponent (|c + i d| = 0 with c + i d ≠ 0)")]
    DegenerateVector,
    #[error("frame matrix is singular or ill-conditioned (condition {condition:e})")]
    SingularFrame { condition: f64 },
    #[error("metric is singular or ill-conditioned (condition {condition:e})")]
    SingularMetric { condition: f64 },
    #[error("gauge matrix is singular or ill-conditioned (condition {condition:e})")]
    SingularGauge { condition: f64 },
    #[error("basis element e{0} has no inverse under this mixture")]
    SingularBasis(usize),
    #[error("adaptive quadrature exhausted {intervals} intervals with error {error:e}")]
    QuadratureFailure { intervals: usize, error: f64 },
    #[error("field tensor is not antisymmetric (defect {defect:e})")]
    AsymmetryError { defect: f64 },
    #[error("weak-field guard violated: perturbation {size:e} exceeds {limit:e}")]
    WeakFieldViolation { size: f64, limit: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
