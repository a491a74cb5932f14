//! Exact combinatorics of complex hyperplane arrangements.
//!
//! The crate builds the intersection lattice of an arrangement defined over
//! the rationals, computes its Möbius function and the Poincaré and
//! characteristic polynomials, and expresses the class of `Rj_*C_U[n]` in the
//! Grothendieck group of perverse sheaves as the formal sum `Σ |μ(F)| [N_F]`.
//! That class is computed twice, once directly from the Möbius table and once
//! through deletion and restriction, and the characteristic polynomial can be
//! cross-checked by counting complement points over a prime field.

pub mod arrangement;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod exactalg;
pub mod fforacle;
pub mod invariants;
pub mod lattice;
pub mod perverse;

pub use arrangement::{Arrangement, Embedding, Family, Hyperplane};
pub use error::{Error, Result};
pub use exactalg::{Field, Fp, Matrix, PrimeField, Rationals};
pub use invariants::IntPolynomial;
pub use lattice::{Flat, IntersectionLattice, MobiusTable};
pub use perverse::{FactorDescriptor, GrothendieckClass};
