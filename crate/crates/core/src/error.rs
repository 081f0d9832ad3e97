use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("characters of mixed parity cannot be added")]
    ParityMismatch,
    #[error("degree {degree} exceeds the supported character degree {max}")]
    DegreeTooLarge { degree: u32, max: u32 },
    #[error("decomposition residual has weight {weight} above the processed weight {bound}")]
    CorruptResidual { weight: u32, bound: u32 },
    /// An internal consistency check failed; the computation contradicts a
    /// theorem it relies on.
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err($crate::Error::InvalidArgument(format!($($msg)+)));
        }
    };
}
pub(crate) use ensure;
