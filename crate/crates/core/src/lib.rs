//! Convergence acceleration by Van Wijngaarden condensation followed by
//! Levin and Weniger sequence transformations.

pub mod condensation;
pub mod driver;
pub mod functions;
pub mod scalar;
pub mod series;
pub mod transforms;
mod wide;

pub use scalar::{Complex64, Scalar};
