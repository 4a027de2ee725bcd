//! Partition combinatorics around the twists `lambda -> p lambda` and
//! `lambda -> lambda + p^r tau` in the modular representation theory of
//! symmetric groups.
//!
//! - [`partition`]: partitions, conjugates, scaling, hats, `p`-adic expansions, enumeration
//! - [`abacus`]: beta-numbers, `p`-cores, block weights, `p x p` partitions
//! - [`mullineux`]: the Mullineux map via its symbol, `tau_n`, and twist identities
//! - [`criteria`]: closed-form Ext¹ / Hom / invariant criteria

pub mod abacus;
pub mod criteria;
pub mod error;
pub mod mullineux;
pub mod partition;

pub use error::{Error, Result};
pub use partition::{enumerate_partitions, Partition, PartitionFilter};
