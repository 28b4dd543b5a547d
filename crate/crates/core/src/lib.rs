//! Exact graded-ring engine for the extended tautological ring of
//! genus-zero stable maps to projective space, its symmetric-group invariants,
//! and the enumerative checks that go with it.

pub mod coefficients;
pub mod error;
pub mod kappa;
pub mod oracles;
pub mod partition;
pub mod polyring;
pub mod presentation;
pub mod quotient;
pub mod stratum;
pub mod symmetry;
pub mod verify;

pub use error::{Error, Result};

/// Version string mixed into cache keys; bump when results could change.
pub const ENGINE_VERSION: &str = concat!("taut-core ", env!("CARGO_PKG_VERSION"));
