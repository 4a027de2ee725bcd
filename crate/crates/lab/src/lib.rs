//! Search harnesses over partitions: where twisting commutes with the
//! Mullineux map, where its image is divisible by `p`, multi-twist
//! differences, twist stability of two-part Ext¹, and block censuses.
//!
//! Every search returns a [`SearchReport`] whose body is a function of the
//! parameters alone.

pub mod error;
pub mod report;
pub mod search;

pub use error::{Error, Result};
pub use report::{Certificate, Hit, ReportBody, ReportMeta, SearchKind, SearchParams, SearchReport, SCHEMA};
pub use search::{
    census, check_twist_persistence, find_p_image, find_twist_commuting, ks_stability_scan,
    multi_twist_scan, SearchOptions,
};
