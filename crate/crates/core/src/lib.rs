//! Computable directed spaces on exact piecewise-linear models.
//!
//! Paths, open sets and test functions have coordinates in `Q(sqrt 2)`, so
//! every directedness question about them is decided exactly.

pub mod catalog;
pub mod constructs;
pub mod dfun;
pub mod dspace;
pub mod error;
pub mod exactnum;
pub mod plgeom;
pub mod report;
pub mod saturate;
pub mod text;
pub mod verdict;

pub use error::{Error, Result};
pub use exactnum::Scalar;
pub use verdict::{Verdict, Witness};
