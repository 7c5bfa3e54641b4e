use thiserror::Error;

/// Failures raised by the algebra routines.
///
/// Negative mathematical answers (a non-principal ideal, a pair that is not
/// idempotent) are returned as ordinary values; this type covers violated
/// preconditions and certificates that fail to re-verify.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("mismatched rings: {0}")]
    RingMismatch(String),
    #[error("element outside the ring: {0}")]
    NotInRing(String),
    #[error("pole at zero: {0}")]
    PoleAtZero(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("certificate failed to verify: {0}")]
    CertificateFailed(String),
    #[error("ideal is not principal: {0}")]
    NotPrincipal(String),
    #[error("support size {size} exceeds the cap {cap}")]
    SupportCapExceeded { size: usize, cap: usize },
    #[error("hypothesis fails ({case}): {detail}")]
    Hypothesis { case: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
