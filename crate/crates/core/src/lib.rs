//! Exact semi-algebraic constructions over the real algebraic numbers, and
//! finite simplicial models for homotopy-theoretic checks.

pub mod complex;
pub mod cover;
pub mod group;
pub mod kan;
pub mod poly;
pub mod rcf;
pub mod scalar;
pub mod semialg;
pub mod snf;

pub use poly::{MPoly, RationalFunction};
pub use rcf::{RcfError, RcfNumber};
pub use scalar::{OrderedField, Sign};

/// Exact rationals.
pub type Q = num_rational::BigRational;
/// Real algebraic numbers.
pub type Real = RcfNumber;
