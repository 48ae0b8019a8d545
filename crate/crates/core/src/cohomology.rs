//! Equivariant and ordinary cohomology presentations, Poincaré data, the
//! closed form for projective space and the tautological line bundle.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{exact_div, int, Matrix, Monomial, Polynomial, QPoly, Rational, WeightedRing, V};
use crate::fundscheme::{projective_chain, zscheme_ideal, ZSchemeIdeal};
use crate::groebner::{hilbert_series, standard_monomials, GroebnerBasis, HilbertSeries};
use crate::regvariety::{projective_space_model, validate_regular, RegularModel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationCertificates {
    pub regular_sequence: bool,
    pub flat_degree: usize,
    pub normalized: bool,
    /// The coordinate-ring series times `(1 - t^2)` equals the ordinary series.
    pub free_over_v: bool,
    pub isolated_zero_dimension: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub model: String,
    pub ring: String,
    pub generators: Vec<String>,
    pub hilbert_numerator: Vec<i64>,
    pub denominator_weights: Vec<u32>,
    /// The reduced series as text.
    pub series: String,
    pub euler: usize,
    pub certificates: PresentationCertificates,
}

fn certificates(z: &ZSchemeIdeal) -> Result<PresentationCertificates> {
    let regular_sequence = z.certify_regular_sequence()?.regular;
    let flat_degree = z.flat_degree()?;
    let free_over_v = z.hilbert_series_z().is_ok();
    Ok(PresentationCertificates {
        regular_sequence,
        flat_degree,
        normalized: z.model().is_normalized(),
        free_over_v,
        isolated_zero_dimension: validate_regular(z.model()).dimension,
    })
}

/// `H_T(X) ≅ k[x, v]/I(Z)` with `deg v = 2`.
pub fn equivariant_presentation(m: &RegularModel) -> Result<PresentationReport> {
    let z = zscheme_ideal(m)?;
    equivariant_presentation_of(&z)
}

pub fn equivariant_presentation_of(z: &ZSchemeIdeal) -> Result<PresentationReport> {
    let certificates = certificates(z)?;
    let (full, _) = z.hilbert_series_z()?;
    Ok(PresentationReport {
        model: z.model().provenance().label(),
        ring: z.ring().describe(),
        generators: z.generators().iter().map(ToString::to_string).collect(),
        hilbert_numerator: full.numerator().to_vec(),
        denominator_weights: full.denominator_weights().to_vec(),
        series: full.reduced().to_string(),
        euler: certificates.flat_degree,
        certificates,
    })
}

/// `H(X) ≅ k[x]/(V(x_1), ..., V(x_n))`.
pub fn ordinary_presentation(m: &RegularModel) -> Result<PresentationReport> {
    let z = zscheme_ideal(m)?;
    ordinary_presentation_of(&z)
}

pub fn ordinary_presentation_of(z: &ZSchemeIdeal) -> Result<PresentationReport> {
    let certificates = certificates(z)?;
    let (_, ordinary) = z.hilbert_series_z()?;
    let poly = ordinary
        .as_polynomial()
        .ok_or_else(|| Error::CertificateFailed(format!("ordinary series {ordinary} is not a polynomial")))?;
    Ok(PresentationReport {
        model: z.model().provenance().label(),
        ring: z.model().ring().describe(),
        generators: z.model().vimages().iter().map(ToString::to_string).collect(),
        hilbert_numerator: poly.clone(),
        denominator_weights: Vec::new(),
        series: HilbertSeries::polynomial(poly.clone()).to_string(),
        euler: poly.iter().sum::<i64>() as usize,
        certificates,
    })
}

/// `P_X(1)`.
pub fn euler_characteristic(m: &RegularModel) -> Result<usize> {
    let z = zscheme_ideal(m)?;
    let (_, ordinary) = z.hilbert_series_z()?;
    let poly = ordinary
        .as_polynomial()
        .ok_or_else(|| Error::CertificateFailed(format!("ordinary series {ordinary} is not a polynomial")))?;
    Ok(poly.iter().sum::<i64>() as usize)
}

/// Ordinary Poincaré polynomial as coefficients indexed by degree.
pub fn poincare_polynomial(z: &ZSchemeIdeal) -> Result<Vec<i64>> {
    let (_, ordinary) = z.hilbert_series_z()?;
    ordinary
        .as_polynomial()
        .ok_or_else(|| Error::CertificateFailed(format!("ordinary series {ordinary} is not a polynomial")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormCertificate {
    pub n: usize,
    /// `∏_{m=0}^{n} (x1 + m v)`
    pub product: String,
    /// Image of each generator under the chain, divided by the product.
    pub quotients: Vec<String>,
    pub series_agree: bool,
    pub product_in_ideal: bool,
}

/// `H_T(P^n) ≅ k[x1, v]/(∏_{m=0}^{n} (x1 + m v))`: eliminating `x_2..x_n`
/// by the chain `x_{j+1} = x_j (x1 + j v)` sends every generator into the
/// ideal of the product, and the last one onto a unit multiple of it.
pub fn pn_closed_form_check(n: usize) -> Result<ClosedFormCertificate> {
    let z = zscheme_ideal(&projective_space_model(n)?)?;
    let small = WeightedRing::new(&["x1", V], &[2, 2])?;
    let x1 = Polynomial::named(&small, "x1");
    let v = Polynomial::named(&small, V);
    let product = (0..=n).fold(Polynomial::one(&small), |acc, m| acc.mul(&x1.add(&v.scale(&int(m as i64)))));

    let mut assignment = projective_chain(&small, n, &x1);
    assignment.insert(V.to_string(), v.clone());
    let mut quotients = Vec::new();
    for (i, g) in z.generators().iter().enumerate() {
        let image = g.substitute_into(&small, &assignment)?;
        let q = exact_div(&image, &product)
            .ok_or_else(|| Error::CheckFailed(format!("chain image {image} of generator {} is not a multiple of {product}", i + 1)))?;
        if i + 1 == n && !(q.is_constant() && !q.is_zero()) {
            return Err(Error::CheckFailed(format!("last generator maps to ({q}) times the product")));
        }
        quotients.push(q.to_string());
    }
    let (full, _) = z.hilbert_series_z()?;
    let closed = hilbert_series(&small, std::slice::from_ref(&product))?;
    let series_agree = closed.same_series(&full);
    if !series_agree {
        return Err(Error::CheckFailed(format!("series {closed} differs from {full}")));
    }
    let lifted = product.embed(z.ring())?;
    let remainder = z.groebner().normal_form(&lifted);
    if !remainder.is_zero() {
        return Err(Error::CheckFailed(format!("the product reduces to {remainder}")));
    }
    Ok(ClosedFormCertificate {
        n,
        product: product.to_string(),
        quotients,
        series_agree,
        product_in_ideal: true,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineBundleCertificate {
    pub n: usize,
    /// The scalar by which the action matrix acts on the fiber.
    pub chern_image: String,
    /// Normal form of `(ξ s)_k − c x_k` for `k = 1..n`; all zero.
    pub congruences: Vec<String>,
    /// Normal form of `c + x1`.
    pub discrepancy: String,
    /// Restriction of `c` to each component.
    pub component_restrictions: Vec<String>,
}

/// The action matrix `ξ(v) = v h′ − 2 e′` on `k^{n+1}`, with
/// `h′ = diag(−n, −n+2, ..., n)` and `e′` the superdiagonal shift.
pub fn line_bundle_action(zring: &std::sync::Arc<WeightedRing>, n: usize) -> Vec<Vec<QPoly>> {
    let v = Polynomial::named(zring, V);
    let mut xi = vec![vec![Polynomial::zero(zring); n + 1]; n + 1];
    for k in 0..=n {
        xi[k][k] = v.scale(&int(2 * k as i64 - n as i64));
        if k < n {
            xi[k][k + 1] = Polynomial::constant(zring, int(-2));
        }
    }
    xi
}

/// The scalar `c(x, v)` by which `ξ(v)` acts on the tautological fiber
/// spanned by `s(x) = (1, x1, ..., xn)`, with the congruences certifying it.
pub fn chern_line_bundle_image(n: usize) -> Result<LineBundleCertificate> {
    let z = zscheme_ideal(&projective_space_model(n)?)?;
    let ring = z.ring().clone();
    let mut s = vec![Polynomial::one(&ring)];
    s.extend((1..=n).map(|j| Polynomial::named(&ring, &format!("x{j}"))));
    let xi = line_bundle_action(&ring, n);
    let image: Vec<QPoly> = xi
        .iter()
        .map(|row| row.iter().zip(&s).fold(Polynomial::zero(&ring), |acc, (a, b)| acc.add(&a.mul(b))))
        .collect();
    let c = image[0].clone();
    let gb = z.groebner();
    let mut congruences = Vec::new();
    for k in 1..=n {
        let r = gb.normal_form(&image[k].sub(&c.mul(&s[k])));
        if !r.is_zero() {
            return Err(Error::CongruenceFailed(format!("entry {k} leaves remainder {r}")));
        }
        congruences.push(r.to_string());
    }
    let discrepancy = gb.normal_form(&c.add(&s[1]));
    let component_restrictions = (0..=n)
        .map(|m| z.component_restriction(&c, m).map(|p| p.to_string_in(V)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LineBundleCertificate {
        n,
        chern_image: c.to_string(),
        congruences,
        discrepancy: discrepancy.to_string(),
        component_restrictions,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityCertificate {
    pub passed: bool,
    /// Degree of the one-dimensional top piece.
    pub socle_degree: Option<u32>,
    /// Dimension of each graded piece, indexed by degree.
    pub graded_dimensions: BTreeMap<u32, usize>,
    /// First degree whose pairing into the top piece is degenerate.
    pub degenerate_degree: Option<u32>,
}

/// Poincaré duality of a graded Artinian quotient: the top piece is a line
/// and `A_k × A_{top−k} → A_top` is perfect for every `k`.
pub fn poincare_duality(gb: &GroebnerBasis<Rational>) -> Result<DualityCertificate> {
    let ring = gb.ring().clone();
    let basis = standard_monomials(gb)?;
    let mut by_degree: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    for m in basis {
        by_degree.entry(ring.weighted_degree(&m)).or_default().push(m);
    }
    let graded_dimensions: BTreeMap<u32, usize> = by_degree.iter().map(|(d, b)| (*d, b.len())).collect();
    let fail = |socle, degenerate| DualityCertificate {
        passed: false,
        socle_degree: socle,
        graded_dimensions: graded_dimensions.clone(),
        degenerate_degree: degenerate,
    };
    let Some((&top, top_basis)) = by_degree.iter().next_back() else {
        return Ok(fail(None, None));
    };
    if top_basis.len() != 1 {
        return Ok(fail(None, Some(top)));
    }
    let socle = top_basis[0].clone();
    for (&d, lower) in &by_degree {
        if d > top {
            break;
        }
        let empty = Vec::new();
        let upper = by_degree.get(&(top - d)).unwrap_or(&empty);
        if upper.len() != lower.len() {
            return Ok(fail(Some(top), Some(d)));
        }
        let rows: Vec<Vec<Rational>> = lower
            .iter()
            .map(|a| {
                upper
                    .iter()
                    .map(|b| {
                        let prod = Polynomial::term(&ring, a.mul(b), int(1));
                        gb.normal_form(&prod).coeff(&socle)
                    })
                    .collect()
            })
            .collect();
        if Matrix::from_rows(rows).rank() != lower.len() {
            return Ok(fail(Some(top), Some(d)));
        }
    }
    Ok(DualityCertificate {
        passed: true,
        socle_degree: Some(top),
        graded_dimensions,
        degenerate_degree: None,
    })
}

/// Betti numbers are non-negative and vanish in odd degree.
pub fn betti_numbers_valid(poly: &[i64]) -> bool {
    poly.iter().enumerate().all(|(k, &c)| c >= 0 && (k % 2 == 0 || c == 0))
}
