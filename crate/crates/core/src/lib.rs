//! Exact k-fold hyperplane covering numbers for grid-like point sets.
//!
//! Grids and hyperplanes use exact rational coordinates ([`Scalar`]). The
//! covering number `cov_k` is computed as an integer program over every
//! distinct way a hyperplane can meet the grid, solved by an exact simplex
//! with branch and bound. Dual weightings certify lower bounds.

pub mod brute;
pub mod certify;
pub mod cli;
pub mod construct;
pub mod cover;
pub mod error;
pub mod experiment;
pub mod generic;
pub mod grid;
pub mod incidence;
pub mod opt;
pub mod scalar;

pub use error::{Error, Result};
pub use grid::{Grid, GridKind, GridPoint, PointId};
pub use incidence::{Cover, Hyperplane};
pub use scalar::Scalar;
