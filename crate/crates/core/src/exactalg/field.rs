//! Coefficient fields.
//!
//! Two fields are used throughout: the rationals and the field of rational
//! functions in the distinguished variable `v` (see [`RatFunc`]). Both are
//! exact; there is no floating-point mode.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational numbers, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Build a rational from an integer numerator and denominator.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// A commutative field of characteristic zero with exact arithmetic.
pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
    fn from_rational(q: &Rational) -> Self;
    fn from_i64(n: i64) -> Self {
        Self::from_rational(&int(n))
    }
    /// Whether the printed form needs parentheses when used as a factor.
    fn is_compound(&self) -> bool;
    /// Sign of a leading coefficient for printing (`true` if it prints with a
    /// leading minus).
    fn prints_negative(&self) -> bool;
    /// Largest bit length of any integer appearing in the value.
    fn bit_length(&self) -> u64;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn is_compound(&self) -> bool {
        false
    }
    fn prints_negative(&self) -> bool {
        self.is_negative()
    }
    fn bit_length(&self) -> u64 {
        self.numer().bits().max(self.denom().bits())
    }
}
