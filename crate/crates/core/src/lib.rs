//! Closed-form channels of qubit port-based teleportation (PBT).
//!
//! Given a permutation-symmetric resource state on `N` ports, the channel enacted by
//! PBT with the square-root measurement is computed from the spin-basis coefficients of
//! the resource, without ever forming the measurement. A dense oracle rebuilds the
//! measurement explicitly for small `N` so every closed form can be checked.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod format;
pub mod halfint;
pub mod kraus;
pub mod linalg;
pub mod optimize;
pub mod oracle;
pub mod pbt_choi;
pub mod resource;
pub mod resource_file;
pub mod spin_basis;

pub use error::{PbtError, Result};
pub use halfint::HalfInt;
