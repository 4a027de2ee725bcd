use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts {0:?} are not weakly decreasing")]
    NotPartition(Vec<u64>),
    #[error("cannot parse partition {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("modulus {0} is too small (need at least 2)")]
    BadModulus(u64),
    #[error("difference {0:?} is not a partition")]
    NonPartitionDifference(Vec<i128>),
    #[error("{0} does not have distinct parts")]
    NotDistinctParts(Partition),
    #[error("{partition} has no {p}-adic expansion: digit {index} is {digit:?}")]
    NoPAdicExpansion {
        partition: Partition,
        p: u64,
        index: usize,
        digit: Vec<u64>,
    },
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("{beads} beads cannot carry a partition with {rows} rows")]
    TooFewBeads { beads: usize, rows: usize },
    #[error("bead positions {0:?} are not strictly decreasing")]
    InvalidAbacus(Vec<u64>),
    #[error("{partition} is not {p}-regular")]
    NotPRegular { partition: Partition, p: u64 },
    #[error("{partition} is not {p}-restricted")]
    NotPRestricted { partition: Partition, p: u64 },
    #[error("invalid Mullineux symbol: {0}")]
    InvalidSymbol(String),
    #[error("no partition with {rows} rows has {p}-rim of size {rim} leaving {base}")]
    NoInsertion {
        base: Partition,
        rim: u64,
        rows: usize,
        p: u64,
    },
    #[error("rim insertion into {base} (rim {rim}, rows {rows}) is ambiguous")]
    AmbiguousInsertion { base: Partition, rim: u64, rows: usize },
    #[error("{0} has more than two parts")]
    NotTwoPart(Partition),
    #[error("partitions of different sizes: {0} and {1}")]
    EqualSizeRequired(u64, u64),
    #[error("prime {0} too small for this criterion (need p > 2)")]
    PrimeTooSmall(u64),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("{a} is not congruent to -1 modulo {modulus}")]
    CongruenceViolated { a: u64, modulus: u64 },
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_modulus(p: u64) -> Result<()> {
    if p < 2 {
        Err(Error::BadModulus(p))
    } else {
        Ok(())
    }
}
