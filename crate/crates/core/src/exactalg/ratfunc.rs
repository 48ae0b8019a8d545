//! The field ℚ(v) of univariate rational functions in the distinguished
//! variable `v`.

use std::fmt;

use num_traits::Signed;

use super::field::{Field, Rational};
use super::unipoly::UniPoly;

/// `num / den` with `den` monic and `gcd(num, den) = 1`. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc {
    num: UniPoly<Rational>,
    den: UniPoly<Rational>,
}

fn v_order(p: &UniPoly<Rational>) -> usize {
    p.coeffs().iter().take_while(|c| Field::is_zero(*c)).count()
}

fn shift_down(p: &UniPoly<Rational>, k: usize) -> UniPoly<Rational> {
    UniPoly::new(p.coeffs()[k..].to_vec())
}

impl RatFunc {
    pub fn new(num: UniPoly<Rational>, den: UniPoly<Rational>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::from_poly(UniPoly::zero());
        }
        let lead = den.leading().unwrap().clone();
        let (mut num, mut den) = if lead.is_one() {
            (num, den)
        } else {
            let inv = lead.inv();
            (num.scale(&inv), den.scale(&inv))
        };
        if den.is_one() {
            return RatFunc { num, den };
        }
        if den.as_monomial().is_some() {
            // den = v^k: the gcd is a power of v.
            let k = den.degree().unwrap();
            let j = v_order(&num).min(k);
            if j > 0 {
                num = shift_down(&num, j);
                den = shift_down(&den, j);
            }
            return RatFunc { num, den };
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.div_rem(&g).0;
            den = den.div_rem(&g).0;
            let lead = den.leading().unwrap().clone();
            if !lead.is_one() {
                let inv = lead.inv();
                num = num.scale(&inv);
                den = den.scale(&inv);
            }
        }
        RatFunc { num, den }
    }

    pub fn from_poly(num: UniPoly<Rational>) -> Self {
        RatFunc {
            num,
            den: UniPoly::one(),
        }
    }

    /// `c * v^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        Self::from_poly(UniPoly::monomial(c, k))
    }

    /// The parameter `v` itself.
    pub fn v() -> Self {
        Self::from_poly(UniPoly::var())
    }

    pub fn numer(&self) -> &UniPoly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly<Rational> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial value, if the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&UniPoly<Rational>> {
        self.is_polynomial().then_some(&self.num)
    }

    /// Evaluate at `v = v0`; `None` if the denominator vanishes there.
    pub fn eval(&self, v0: &Rational) -> Option<Rational> {
        let d = self.den.eval(v0);
        if Field::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(v0) / d)
        }
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFunc::new(self.num.add(&other.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }
    fn from_rational(q: &Rational) -> Self {
        Self::from_poly(UniPoly::constant(q.clone()))
    }
    fn is_compound(&self) -> bool {
        !self.den.is_one() || self.num.as_monomial().is_none()
    }
    fn prints_negative(&self) -> bool {
        !self.is_compound() && self.num.leading().is_some_and(|c| c.is_negative())
    }
    fn bit_length(&self) -> u64 {
        self.num
            .coeffs()
            .iter()
            .chain(self.den.coeffs())
            .map(Field::bit_length)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &UniPoly<Rational>| {
            let s = p.to_string_in("v");
            if p.as_monomial().is_some() {
                s
            } else {
                format!("({s})")
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num.to_string_in("v"))
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}
