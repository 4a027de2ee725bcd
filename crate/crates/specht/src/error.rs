use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} has size {size}, above the bound {bound}")]
    TooLarge { what: String, size: u128, bound: u128 },
    #[error("modules do not match: {0}")]
    SizeMismatch(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("no splitting endomorphism among {samples} samples; decomposability undecided")]
    Inconclusive { samples: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Core(#[from] twistlab_core::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
