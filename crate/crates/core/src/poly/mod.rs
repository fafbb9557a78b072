//! Exact multivariate polynomials over the rationals, ring descriptors and
//! the literal syntax used by problem files.

mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use polynomial::{variable_decompose, ArithOp, Polynomial};
pub use ring::{Factor, ProductRing, Ring, RingSpec};

/// Exact rational scalar; always stored in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;
