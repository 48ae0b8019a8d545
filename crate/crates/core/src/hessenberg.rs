//! Hessenberg and Peterson varieties inside the type-A flag variety: the
//! ideal of their zero scheme, Poincaré polynomials, the product formula,
//! and complete-intersection and duality certificates.
//!
//! The ideal generated by the flag generators and the `v_β` for
//! `β ∉ Ω` can carry embedded components supported on `v = 0`. The
//! zero scheme is the closure of its `v ≠ 0` part, so the ideal is
//! saturated with respect to `v` before any series is read off.

use std::sync::OnceLock;

use serde::Serialize;

use crate::cohomology::{poincare_duality, DualityCertificate};
use crate::error::{Error, Result};
use crate::exactalg::{int, QPoly, Rational};
use crate::fundscheme::{zscheme_ideal, ZSchemeIdeal};
use crate::groebner::{grevlex_basis, hilbert_series_of_basis, saturate, tpoly, GroebnerBasis, HilbertSeries};
use crate::regvariety::flag_model_a;
use crate::rootsys::{hessenberg_fixed_points, require_valid, HessenbergSpace, Root};

#[derive(Clone, Debug)]
pub struct HessenbergIdeal {
    space: HessenbergSpace,
    flag: ZSchemeIdeal,
    generators: Vec<QPoly>,
    extra: Vec<(Root, QPoly)>,
    generated: OnceLock<GroebnerBasis<Rational>>,
    saturated: OnceLock<Result<GroebnerBasis<Rational>>>,
    ordinary: OnceLock<Result<GroebnerBasis<Rational>>>,
}

/// Flag generators plus `v_β` for every negative root `β` outside `Ω`.
pub fn hessenberg_ideal(space: &HessenbergSpace) -> Result<HessenbergIdeal> {
    require_valid(space)?;
    let flag = zscheme_ideal(&flag_model_a(space.rank())?)?;
    let data = flag.model().flag_data().expect("flag model carries its data").clone();
    let mut generators = flag.generators().to_vec();
    let mut extra = Vec::new();
    for beta in space.complement() {
        let k = data.coordinate_of(&beta).expect("every negative root labels a coordinate");
        let vb = data.v_alpha[k].embed(flag.ring())?;
        generators.push(vb.clone());
        extra.push((beta, vb));
    }
    Ok(HessenbergIdeal {
        space: space.clone(),
        flag,
        generators,
        extra,
        generated: OnceLock::new(),
        saturated: OnceLock::new(),
        ordinary: OnceLock::new(),
    })
}

impl HessenbergIdeal {
    pub fn space(&self) -> &HessenbergSpace {
        &self.space
    }

    pub fn flag(&self) -> &ZSchemeIdeal {
        &self.flag
    }

    pub fn generators(&self) -> &[QPoly] {
        &self.generators
    }

    /// The added `v_β` with their roots.
    pub fn added(&self) -> &[(Root, QPoly)] {
        &self.extra
    }

    /// Basis of the ideal as generated.
    pub fn generated_groebner(&self) -> &GroebnerBasis<Rational> {
        self.generated.get_or_init(|| grevlex_basis(self.flag.ring(), &self.generators))
    }

    /// Basis of the saturation by `v`: the ideal of the zero scheme.
    pub fn groebner(&self) -> Result<&GroebnerBasis<Rational>> {
        self.saturated
            .get_or_init(|| {
                let ring = self.flag.ring();
                saturate(ring, &self.generators, ring.v_index().expect("zring carries v"))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Basis of the `v = 0` fiber of the zero scheme, in the coordinate ring.
    pub fn ordinary_groebner(&self) -> Result<&GroebnerBasis<Rational>> {
        self.ordinary
            .get_or_init(|| {
                let gens: Vec<QPoly> = self.groebner()?.elements().iter().map(|g| g.specialize_v(&int(0))).collect();
                Ok(grevlex_basis(self.flag.model().ring(), &gens))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Whether the generated ideal already equals its saturation.
    pub fn generated_is_saturated(&self) -> Result<bool> {
        let sat = self.groebner()?;
        let gen = self.generated_groebner();
        Ok(sat.elements().iter().all(|g| gen.contains(g)))
    }

    /// `I(Z) ⊆ I(Z_Y)`, checked generator by generator.
    pub fn contains_flag_ideal(&self) -> Result<bool> {
        let gb = self.groebner()?;
        Ok(self.flag.generators().iter().all(|g| gb.contains(g)))
    }
}

/// `∏_{−α ∈ Ω} (1 − q^{ht α + 1}) / (1 − q^{ht α})` as a rational function
/// in `q`, and its expansion when it is a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductFormula {
    pub numerator: Vec<i64>,
    pub denominator_exponents: Vec<u32>,
    pub polynomial: Option<Vec<i64>>,
}

impl ProductFormula {
    /// The polynomial with `q = t^2`.
    pub fn in_t(&self) -> Option<Vec<i64>> {
        self.polynomial.as_ref().map(|p| q_to_t(p))
    }

    pub fn diagnostic(&self) -> Option<&'static str> {
        match &self.polynomial {
            None => Some("NOT_POLYNOMIAL"),
            Some(p) if p.iter().any(|&c| c < 0) => Some("NEGATIVE_COEFFICIENT"),
            _ => None,
        }
    }
}

pub fn q_to_t(q: &[i64]) -> Vec<i64> {
    let mut t = vec![0; 2 * q.len().saturating_sub(1) + 1];
    for (k, &c) in q.iter().enumerate() {
        t[2 * k] = c;
    }
    tpoly::trim(t)
}

/// Evaluate the product formula; the space need not satisfy the closure
/// property.
pub fn product_formula(space: &HessenbergSpace) -> ProductFormula {
    let mut numerator = vec![1];
    let mut denominator_exponents = Vec::new();
    for alpha in space.omega() {
        let h = alpha.height();
        numerator = tpoly::mul(&numerator, &tpoly::one_minus(h + 1));
        denominator_exponents.push(h);
    }
    let series = HilbertSeries::new(numerator.clone(), denominator_exponents.clone());
    ProductFormula {
        numerator,
        denominator_exponents,
        polynomial: series.as_polynomial(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HessenbergPoincare {
    pub omega: String,
    /// Coefficients by cohomological degree.
    pub poincare: Vec<i64>,
    pub series: String,
    pub product_formula: ProductFormula,
    pub euler: i64,
    pub fixed_points: usize,
    pub generated_is_saturated: bool,
}

/// The Poincaré polynomial of the `v = 0` fiber; it must match the product
/// formula with `q = t^2` and count the fixed points.
pub fn hessenberg_poincare(h: &HessenbergIdeal) -> Result<HessenbergPoincare> {
    let gb = h.ordinary_groebner()?;
    let series = hilbert_series_of_basis(gb);
    let poincare = series
        .as_polynomial()
        .ok_or_else(|| Error::Mismatch(format!("series {series} is not a polynomial")))?;
    let pf = product_formula(&h.space);
    let expected = pf.in_t();
    if expected.as_ref() != Some(&poincare) {
        return Err(Error::Mismatch(format!(
            "computed {} but the product formula gives {}",
            HilbertSeries::polynomial(poincare.clone()),
            expected.map_or("a non-polynomial".to_string(), |p| HilbertSeries::polynomial(p).to_string())
        )));
    }
    let fixed_points = hessenberg_fixed_points(&h.space)?.len();
    let euler = poincare.iter().sum::<i64>();
    if euler != fixed_points as i64 {
        return Err(Error::Mismatch(format!(
            "Euler characteristic {euler} but {fixed_points} fixed points"
        )));
    }
    Ok(HessenbergPoincare {
        omega: h.space.describe(),
        series: HilbertSeries::polynomial(poincare.clone()).to_string(),
        poincare,
        product_formula: pf,
        euler,
        fixed_points,
        generated_is_saturated: h.generated_is_saturated()?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompleteIntersectionCertificate {
    pub passed: bool,
    pub codimension: usize,
    /// The exponents `e_k` of the peeled factors `(1 - t^{e_k})`, ascending.
    pub degrees: Vec<u32>,
    /// What is left of the numerator after peeling.
    pub remainder: Vec<i64>,
}

/// Peel factors `(1 − t^e)` off a numerator, smallest `e` first.
pub fn peel_factors(numerator: &[i64]) -> (Vec<u32>, Vec<i64>) {
    let mut rest = tpoly::trim(numerator.to_vec());
    let mut degrees = Vec::new();
    while let Some(e) = (1..rest.len()).find(|&k| rest[k] != 0) {
        if rest[e] > 0 {
            break;
        }
        match tpoly::div_one_minus(&rest, e as u32) {
            Some(q) => {
                rest = q;
                degrees.push(e as u32);
            }
            None => break,
        }
    }
    (degrees, rest)
}

/// The coordinate ring of the zero scheme has the Hilbert series of a
/// complete intersection of codimension `#coordinates`.
pub fn complete_intersection_check(h: &HessenbergIdeal) -> Result<CompleteIntersectionCertificate> {
    let series = hilbert_series_of_basis(h.groebner()?);
    let (degrees, remainder) = peel_factors(series.numerator());
    let codimension = h.flag.nvars();
    Ok(CompleteIntersectionCertificate {
        passed: remainder == [1] && degrees.len() == codimension,
        codimension,
        degrees,
        remainder,
    })
}

pub fn poincare_duality_check(h: &HessenbergIdeal) -> Result<DualityCertificate> {
    poincare_duality(h.ordinary_groebner()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HessenbergReport {
    pub rank: usize,
    pub generators: Vec<String>,
    pub added: Vec<String>,
    pub poincare: HessenbergPoincare,
    pub fixed_points: Vec<String>,
    pub complete_intersection: CompleteIntersectionCertificate,
    pub duality: DualityCertificate,
    pub contains_flag_ideal: bool,
}

/// Everything known about one Hessenberg space.
pub fn analyze(space: &HessenbergSpace) -> Result<HessenbergReport> {
    let h = hessenberg_ideal(space)?;
    let poincare = hessenberg_poincare(&h)?;
    Ok(HessenbergReport {
        rank: space.rank(),
        generators: h.generators.iter().map(ToString::to_string).collect(),
        added: h.extra.iter().map(|(r, p)| format!("{r}: {p}")).collect(),
        poincare,
        fixed_points: hessenberg_fixed_points(space)?.iter().map(ToString::to_string).collect(),
        complete_intersection: complete_intersection_check(&h)?,
        duality: poincare_duality_check(&h)?,
        contains_flag_ideal: h.contains_flag_ideal()?,
    })
}
