use thiserror::Error;

use crate::polyq::ParseError;

/// Failures raised anywhere in the pipeline.
///
/// Numerical failures ([`EngineError::is_retryable`]) are handled by the
/// retry ladder in `limits`, which doubles truncation order and precision.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("root finder did not converge after {0} iterations")]
    NonConvergence(usize),
    #[error("root clusters are too close to separate at this precision")]
    AmbiguousClustering,
    #[error("complex root without a conjugate partner")]
    UnpairedComplexRoot,
    #[error("base factors are not coprime (condition estimate 2^{0})")]
    NotCoprime(i64),
    #[error("lifted correction exceeds its degree bound")]
    DegreeOverflow,
    #[error("leading coefficient is not invertible")]
    NotInvertibleLeading,
    #[error("truncation order too small: {0}")]
    TruncationExhausted(String),
    #[error("branch factorization exceeded {0} reduction rounds")]
    IterationCapExceeded(usize),
    #[error("denominator does not have an isolated zero: vanishes along {0}")]
    IsolatedZeroViolated(String),
    #[error("invalid input: {0}")]
    InputError(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl EngineError {
    /// Whether raising the truncation order or precision may fix the failure.
    pub fn is_retryable(&self) -> bool {
        matches!(
            self,
            EngineError::NonConvergence(_)
                | EngineError::AmbiguousClustering
                | EngineError::UnpairedComplexRoot
                | EngineError::NotCoprime(_)
                | EngineError::DegreeOverflow
                | EngineError::NotInvertibleLeading
                | EngineError::TruncationExhausted(_)
                | EngineError::IterationCapExceeded(_)
                | EngineError::Internal(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, EngineError>;
