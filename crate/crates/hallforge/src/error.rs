//! Crate-wide error type and its mapping to CLI exit codes.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A documented enumeration budget would be exceeded; the computation is
    /// refused rather than attempted.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// Malformed input: bad JSON shape, unknown vertex labels, loops, and
    /// similar input contract violations.
    #[error("schema error: {0}")]
    Schema(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("unknown key expression: {0}")]
    UnknownKey(String),

    #[error("mismatched element kinds: {0} vs {1}")]
    KindMismatch(&'static str, &'static str),

    #[error("dimension out of range: {0}")]
    DimOutOfRange(String),

    /// An exact division produced a remainder. The counting identities make
    /// these divisions exact, so this signals a bug, not bad input.
    #[error("non-integral division in {0}")]
    NonIntegral(&'static str),

    /// An internal invariant failed; a bug, not bad input.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    /// A verification suite found a counterexample.
    #[error("verification failed: {0}")]
    VerifyFailed(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Exit code contract: 1 verification failure or internal defect,
    /// 2 usage/schema error, 3 refused budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget(_) => 3,
            Error::Schema(_)
            | Error::NotPrime(_)
            | Error::UnknownKey(_)
            | Error::KindMismatch(..)
            | Error::DimOutOfRange(_)
            | Error::Io(_)
            | Error::Json(_) => 2,
            Error::NonIntegral(_) | Error::Internal(_) | Error::VerifyFailed(_) => 1,
        }
    }
}
