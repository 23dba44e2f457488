//! Exact recognition of {a,b,c}-modular integer matrices and integer
//! programming over them.
//!
//! D(A) denotes the set of absolute values of the maximal (n×n)
//! subdeterminants of an m×n matrix A with m >= n.

pub mod error;
pub mod generators;
pub mod linalg;
pub mod matrix;
pub mod optimize;
pub mod oracle;
pub mod recognition;
pub mod tu;
pub mod util;

pub use error::{Error, Result};
pub use matrix::{IntMatrix, RationalVector};
