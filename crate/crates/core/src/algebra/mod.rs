//! Exact arithmetic: rationals, sparse integer polynomials in the `q`
//! variables, fraction-free determinants and rational linear algebra.

pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use linalg::{RatMatrix, SolutionSet};
pub use matrix::PolyMatrix;
pub use poly::{Monomial, Polynomial, QAssignment, Side, Variable};
pub use rational::{format_rational, parse_rational, Rational};
