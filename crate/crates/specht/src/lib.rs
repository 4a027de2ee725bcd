//! Specht and permutation modules of symmetric groups over prime fields.
//!
//! Modules are given by matrices for the transposition `(0 1)` and the
//! long cycle `(0 1 .. d-1)`. On top of that sit homomorphism spaces,
//! endomorphism algebras, fixed points and a decomposability test.

pub mod decompose;
pub mod error;
pub mod gf;
pub mod hom;
pub mod module;
pub mod perm;
pub mod tableau;

pub use decompose::{invariants_dim, is_decomposable, sign_dual_check, Decomposition, Method};
pub use error::{Error, Result};
pub use gf::GfMatrix;
pub use hom::{end_ring, hom_basis, hom_dim};
pub use module::{build_specht, build_specht_with, Representation, SpechtModule, SpechtOptions};
pub use tableau::dim_specht;
