//! Exact arithmetic: rationals, ℚ(v), weighted graded polynomial rings,
//! derivatives, Jacobians, dense matrices and the expression parser.

pub mod field;
pub mod matrix;
pub mod parse;
pub mod polynomial;
pub mod ratfunc;
pub mod ring;
pub mod unipoly;

pub use field::{int, rat, Field, Rational};
pub use matrix::Matrix;
pub use parse::parse_polynomial;
pub use polynomial::{determinant, exact_div, jacobian_determinant, Degree, Polynomial};
pub use ratfunc::RatFunc;
pub use ring::{Monomial, WeightedRing, V};
pub use unipoly::UniPoly;

/// Polynomials with rational coefficients.
pub type QPoly = Polynomial<Rational>;
/// Polynomials with coefficients in ℚ(v).
pub type QvPoly = Polynomial<RatFunc>;
