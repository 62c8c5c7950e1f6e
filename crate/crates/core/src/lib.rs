//! Exact computations on hyperplane arrangements modelled by sign vectors:
//! face semigroups, Varchenko matrices and their determinants, and the
//! Aguiar–Mahajan linear system.

pub mod algebra;
pub mod amsystem;
pub mod arrangement;
pub mod checks;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod random;
pub mod varchenko;

pub use algebra::{PolyMatrix, Polynomial, QAssignment, Rational, Variable};
pub use arrangement::{Apartment, Arrangement, Face, Flat, Mode, Sign, SignVector};
pub use error::{Error, Result};
