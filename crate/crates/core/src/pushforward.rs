//! The Jacobian class, the trace map `k[Z] → k[v]`, and the equivariant
//! integral `∫ f = Σ_{points of Z} f / J`, computed as `Tr(f · J⁻¹)` over
//! ℚ(v), with an independent fiberwise oracle.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{
    int, jacobian_determinant, Field, Polynomial, QPoly, QvPoly, RatFunc, Rational, UniPoly, V,
};
use crate::fundscheme::ZSchemeIdeal;
use crate::groebner::{grevlex_basis, QuotientAlgebra};
use crate::serde_str;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobianClass {
    #[serde(serialize_with = "serde_str::display")]
    pub jacobian: QPoly,
    pub degree: Option<u32>,
}

/// `det(∂g_i/∂x_j)` of the canonical generators.
pub fn jacobian_class(z: &ZSchemeIdeal) -> Result<JacobianClass> {
    let vars: Vec<usize> = (0..z.nvars()).collect();
    let jacobian = jacobian_determinant(z.generators(), &vars)?;
    let degree = jacobian.weighted_degree().value();
    if degree != Some(2 * z.nvars() as u32) {
        return Err(Error::CertificateFailed(format!(
            "Jacobian {jacobian} is not homogeneous of degree {}",
            2 * z.nvars()
        )));
    }
    Ok(JacobianClass { jacobian, degree })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NondivisibilityCertificate {
    /// Normal form of `J` modulo `I(Z) + (v)`; nonzero.
    pub normal_form: String,
}

/// `J` does not vanish in `k[Z]/(v)`, so it is not divisible by `v`.
pub fn jacobian_nondivisibility(z: &ZSchemeIdeal) -> Result<NondivisibilityCertificate> {
    let j = jacobian_class(z)?.jacobian;
    let nf = z.ordinary_groebner().normal_form(&j.specialize_v(&int(0)));
    if nf.is_zero() {
        return Err(Error::CertificateFailed("the Jacobian lies in I(Z) + (v)".into()));
    }
    Ok(NondivisibilityCertificate {
        normal_form: nf.to_string(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Trace,
    FiberSum,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralResult {
    #[serde(serialize_with = "serde_str::display")]
    pub value: VPoly,
    /// Weighted degree of the integrand, if homogeneous.
    pub class_degree: Option<u32>,
    /// `value` is homogeneous of degree `class_degree − 2n`, or zero.
    pub degree_contract: bool,
    pub model: String,
    pub method: Method,
}

/// A polynomial in `v`, printed in `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct VPoly(pub UniPoly<Rational>);

impl std::fmt::Display for VPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt_in(V, f)
    }
}

/// Precomputed data for integrating many classes on one model: the
/// quotient over ℚ(v), the trace functional and `J⁻¹`.
#[derive(Debug)]
pub struct Integrator<'a> {
    z: &'a ZSchemeIdeal,
    algebra: &'a QuotientAlgebra<RatFunc>,
    functional: Vec<RatFunc>,
    jacobian: QPoly,
    jacobian_inverse: QvPoly,
}

impl<'a> Integrator<'a> {
    pub fn new(z: &'a ZSchemeIdeal) -> Result<Self> {
        let algebra = z.algebra()?;
        let jacobian = jacobian_class(z)?.jacobian;
        let jacobian_inverse = algebra
            .inverse(&jacobian.to_param_field())
            .ok_or(Error::JacobianNotInvertible)?;
        Ok(Integrator {
            z,
            algebra,
            functional: algebra.trace_functional(),
            jacobian,
            jacobian_inverse,
        })
    }

    pub fn jacobian(&self) -> &QPoly {
        &self.jacobian
    }

    pub fn rank(&self) -> usize {
        self.algebra.dim()
    }

    fn polynomial(&self, value: RatFunc, what: &str) -> Result<UniPoly<Rational>> {
        value
            .as_polynomial()
            .cloned()
            .ok_or_else(|| Error::NonPolynomialTrace(format!("{what} = {value}")))
    }

    /// `Tr(M_f)` over ℚ(v); a polynomial in `v`.
    pub fn trace(&self, f: &QPoly) -> Result<UniPoly<Rational>> {
        let f = self.z.lift(f)?;
        let value = self.algebra.trace_with(&self.functional, &f.to_param_field());
        self.polynomial(value, &format!("Tr({f})"))
    }

    /// `∫ f = Tr(f · J⁻¹)`.
    pub fn integrate(&self, f: &QPoly) -> Result<IntegralResult> {
        let f = self.z.lift(f)?;
        let integrand = f.to_param_field().mul(&self.jacobian_inverse);
        let value = self.algebra.trace_with(&self.functional, &integrand);
        let value = self.polynomial(value, &format!("∫({f})"))?;
        let class_degree = f.weighted_degree().value();
        Ok(IntegralResult {
            degree_contract: degree_contract(&value, class_degree, self.z.nvars()),
            value: VPoly(value),
            class_degree,
            model: self.z.model().provenance().label(),
            method: Method::Trace,
        })
    }
}

/// The value is `c · v^{(d − 2n)/2}`, and zero when `d < 2n`.
fn degree_contract(value: &UniPoly<Rational>, class_degree: Option<u32>, n: usize) -> bool {
    let Some(d) = class_degree else {
        return true;
    };
    if value.is_zero() {
        return true;
    }
    let top = 2 * n as u32;
    if d < top {
        return false;
    }
    matches!(value.as_monomial(), Some((_, k)) if 2 * k as u32 == d - top)
}

pub fn trace(z: &ZSchemeIdeal, f: &QPoly) -> Result<UniPoly<Rational>> {
    let algebra = z.algebra()?;
    let f = z.lift(f)?;
    let value = algebra.trace_with(&algebra.trace_functional(), &f.to_param_field());
    value
        .as_polynomial()
        .cloned()
        .ok_or_else(|| Error::NonPolynomialTrace(format!("Tr({f}) = {value}")))
}

pub fn equivariant_integral(z: &ZSchemeIdeal, f: &QPoly) -> Result<IntegralResult> {
    Integrator::new(z)?.integrate(f)
}

/// `Σ f / J` over the points of the fiber `v = v0`, as
/// `Tr(M_f · M_J⁻¹)` in `ℚ[x]/I(Z)|_{v = v0}`.
pub fn fiber_sum_oracle(z: &ZSchemeIdeal, f: &QPoly, v0: &Rational) -> Result<Rational> {
    let ring = z.model().ring();
    let gens: Vec<QPoly> = z.generators().iter().map(|g| g.specialize_v(v0)).collect();
    let algebra = QuotientAlgebra::new(grevlex_basis(ring, &gens))?;
    let vars: Vec<usize> = (0..z.nvars()).collect();
    let j = jacobian_determinant(z.generators(), &vars)?.specialize_v(v0);
    let mj_inv = algebra
        .multiplication_matrix(&j)
        .inverse()
        .ok_or_else(|| Error::SingularJacobianAtFiber(v0.to_string()))?;
    let f = z.lift(f)?.specialize_v(v0);
    Ok(algebra.multiplication_matrix(&f).mul(&mj_inv).trace())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalizationGuard {
    pub passed: bool,
    /// Coefficient of `v x_i` in each generator, divided by `a_i`.
    #[serde(serialize_with = "serde_str::display_vec")]
    pub scale_factors: Vec<Rational>,
    /// `∫ J_ref`, with `J_ref` the Jacobian of the generators rescaled to
    /// the canonical normalization; equals the rank exactly when the
    /// generators are canonical.
    #[serde(serialize_with = "serde_str::display")]
    pub reference_integral: Rational,
    pub rank: usize,
}

/// Regression guard on the generator normalization: rescaling a generator
/// by `c` divides every integral by `c`.
pub fn normalization_guard(z: &ZSchemeIdeal) -> Result<NormalizationGuard> {
    let integrator = Integrator::new(z)?;
    let model = z.model();
    let scale_factors: Vec<Rational> = model
        .normalization_coefficients()
        .iter()
        .zip(model.weights())
        .map(|(c, &a)| c / int(a as i64))
        .collect();
    let product = scale_factors.iter().fold(int(1), |acc, c| acc * c);
    if Field::is_zero(&product) {
        return Err(Error::CheckFailed("a generator has no v x_i term".into()));
    }
    let reference = integrator.jacobian().scale(&product.inv());
    let value = integrator.integrate(&reference)?.value.0;
    let reference_integral = value
        .as_monomial()
        .filter(|(_, k)| *k == 0)
        .map(|(c, _)| c.clone())
        .unwrap_or_else(|| if value.is_zero() { int(0) } else { int(-1) });
    let rank = integrator.rank();
    Ok(NormalizationGuard {
        passed: reference_integral == int(rank as i64) && scale_factors.iter().all(|c| *c == int(1)),
        scale_factors,
        reference_integral,
        rank,
    })
}

/// `f` times `v`, as a class in the ring of `z`.
pub fn times_v(z: &ZSchemeIdeal, f: &QPoly) -> Result<QPoly> {
    Ok(z.lift(f)?.mul(&Polynomial::named(z.ring(), V)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::fundscheme::zscheme_ideal;
    use crate::regvariety::{flag_model_a, projective_space_model};

    fn pn(n: usize) -> ZSchemeIdeal {
        zscheme_ideal(&projective_space_model(n).unwrap()).unwrap()
    }

    fn constant(c: i64) -> UniPoly<Rational> {
        UniPoly::constant(int(c))
    }

    #[test]
    fn jacobians() {
        let z = pn(1);
        assert_eq!(jacobian_class(&z).unwrap().jacobian, z.parse("2*v + 4*x1").unwrap());
        // det [[2v + 4x1, -2], [2x2, 4v + 2x1]]
        let z2 = pn(2);
        let j2 = jacobian_class(&z2).unwrap();
        assert_eq!(j2.jacobian, z2.parse("(2*v + 4*x1)*(4*v + 2*x1) + 4*x2").unwrap());
        assert_eq!(j2.degree, Some(4));
        for n in 1..=3 {
            assert!(jacobian_nondivisibility(&pn(n)).is_ok());
        }
    }

    #[test]
    fn traces() {
        let z2 = pn(2);
        assert_eq!(trace(&z2, &z2.parse("1").unwrap()).unwrap(), constant(3));
        assert_eq!(trace(&z2, &z2.parse("x1").unwrap()).unwrap(), UniPoly::monomial(int(-3), 1));
        let z1 = pn(1);
        assert_eq!(trace(&z1, &z1.parse("x1").unwrap()).unwrap(), UniPoly::monomial(int(-1), 1));
    }

    #[test]
    fn integrals_on_projective_line() {
        let z = pn(1);
        let i = Integrator::new(&z).unwrap();
        assert_eq!(i.integrate(&z.parse("x1").unwrap()).unwrap().value.0, UniPoly::constant(rat(1, 2)));
        assert!(i.integrate(&z.parse("1").unwrap()).unwrap().value.0.is_zero());
        let j = i.jacobian().clone();
        assert_eq!(i.integrate(&j).unwrap().value.0, constant(2));
        let vx = i.integrate(&z.parse("v*x1").unwrap()).unwrap();
        assert_eq!(vx.value.to_string(), "1/2*v");
        assert!(vx.degree_contract);
    }

    #[test]
    fn fiber_oracle() {
        let z1 = pn(1);
        assert_eq!(fiber_sum_oracle(&z1, &z1.parse("x1").unwrap(), &int(2)).unwrap(), rat(1, 2));
        assert_eq!(fiber_sum_oracle(&z1, &z1.parse("v*x1").unwrap(), &int(3)).unwrap(), rat(3, 2));
        let z3 = pn(3);
        let j = jacobian_class(&z3).unwrap().jacobian;
        assert_eq!(fiber_sum_oracle(&z3, &j, &int(1)).unwrap(), int(4));
        assert_eq!(
            fiber_sum_oracle(&z1, &z1.parse("x1").unwrap(), &int(0)).unwrap_err().code(),
            "SINGULAR_J_AT_FIBER"
        );
    }

    #[test]
    fn flag_integrals() {
        let z = zscheme_ideal(&flag_model_a(2).unwrap()).unwrap();
        let i = Integrator::new(&z).unwrap();
        let j = i.jacobian().clone();
        assert_eq!(i.integrate(&j).unwrap().value.0, constant(6));
        assert!(jacobian_nondivisibility(&z).is_ok());
    }

    #[test]
    fn guard_catches_rescaling() {
        let model = projective_space_model(2).unwrap();
        let good = normalization_guard(&zscheme_ideal(&model).unwrap()).unwrap();
        assert!(good.passed);
        let bad = zscheme_ideal(&model.with_scaled_generator(0, &int(3))).unwrap();
        let g = normalization_guard(&bad).unwrap();
        assert!(!g.passed);
        assert_eq!(g.reference_integral, rat(1, 1));
    }
}
