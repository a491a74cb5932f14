//! Field-generic exact linear algebra.
//!
//! Everything above this module works over an abstract [`Field`] so the same
//! lattice code runs over the rationals and over prime fields.

mod field;
mod matrix;

pub use field::{format_rational, parse_rational, Field, Fp, PrimeField, Rationals};
pub use matrix::{rowspace_contains, Matrix};
