//! Exact computational commutative algebra: sparse polynomials over the
//! rationals and odd prime fields, Gröbner bases, graded free resolutions,
//! strength and ν-complexity of quadrics, regular sequences, decomposition
//! into high-ν subalgebras, and generic initial ideals.

pub mod error;
pub mod explorer;
pub mod gin;
pub mod groebner;
pub mod linalg;
pub mod resolution;
pub mod strength;
pub mod structure;
pub mod ring;

pub use error::{Error, Result};
