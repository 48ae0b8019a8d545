//! Hilbert series of weighted-homogeneous quotients.
//!
//! Series are stored as `numerator(t) / ∏ (1 - t^{a_i})` with integer
//! numerator coefficients indexed by weighted degree.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Monomial, Polynomial, WeightedRing};

use super::basis::buchberger;
use super::order::MonomialOrder;
use super::GroebnerBasis;

/// Integer polynomials in `t`, low degree first, trimmed.
pub mod tpoly {
    pub fn trim(mut p: Vec<i64>) -> Vec<i64> {
        while p.last() == Some(&0) {
            p.pop();
        }
        p
    }

    pub fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0i64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = a.len().max(b.len());
        trim((0..n).map(|k| a.get(k).unwrap_or(&0) + b.get(k).unwrap_or(&0)).collect())
    }

    pub fn shift(a: &[i64], k: usize) -> Vec<i64> {
        if a.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; k];
        out.extend_from_slice(a);
        out
    }

    /// `1 - t^e`
    pub fn one_minus(e: u32) -> Vec<i64> {
        let mut p = vec![0; e as usize + 1];
        p[0] = 1;
        p[e as usize] -= 1;
        trim(p)
    }

    /// Exact division by `1 - t^e`, if possible.
    pub fn div_one_minus(a: &[i64], e: u32) -> Option<Vec<i64>> {
        let e = e as usize;
        if a.is_empty() {
            return Some(Vec::new());
        }
        if a.len() <= e {
            return None;
        }
        let mut q = vec![0i64; a.len() - e];
        for k in 0..q.len() {
            q[k] = a[k] + if k >= e { q[k - e] } else { 0 };
        }
        (mul(&q, &one_minus(e as u32)) == trim(a.to_vec())).then_some(q)
    }

    pub fn eval_at_one(a: &[i64]) -> i64 {
        a.iter().sum()
    }

    pub fn render(a: &[i64]) -> String {
        if a.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if s.is_empty() {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            match (k, mag) {
                (0, _) => s.push_str(&mag.to_string()),
                (1, 1) => s.push('t'),
                (1, _) => s.push_str(&format!("{mag}*t")),
                (_, 1) => s.push_str(&format!("t^{k}")),
                _ => s.push_str(&format!("{mag}*t^{k}")),
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    numerator: Vec<i64>,
    denominator_weights: Vec<u32>,
}

impl HilbertSeries {
    pub fn new(numerator: Vec<i64>, denominator_weights: Vec<u32>) -> Self {
        HilbertSeries {
            numerator: tpoly::trim(numerator),
            denominator_weights,
        }
    }

    /// A polynomial series (no denominator).
    pub fn polynomial(p: Vec<i64>) -> Self {
        Self::new(p, Vec::new())
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn denominator_weights(&self) -> &[u32] {
        &self.denominator_weights
    }

    fn denominator(&self) -> Vec<i64> {
        self.denominator_weights
            .iter()
            .fold(vec![1], |acc, &w| tpoly::mul(&acc, &tpoly::one_minus(w)))
    }

    /// Equality as rational functions.
    pub fn same_series(&self, other: &HilbertSeries) -> bool {
        tpoly::mul(&self.numerator, &other.denominator()) == tpoly::mul(&other.numerator, &self.denominator())
    }

    /// Cancel denominator factors that divide the numerator.
    pub fn reduced(&self) -> HilbertSeries {
        let mut num = self.numerator.clone();
        let mut den = Vec::new();
        for &w in &self.denominator_weights {
            match tpoly::div_one_minus(&num, w) {
                Some(q) if !num.is_empty() => num = q,
                _ => den.push(w),
            }
        }
        HilbertSeries::new(num, den)
    }

    /// The series as a polynomial, if it is one.
    pub fn as_polynomial(&self) -> Option<Vec<i64>> {
        let r = self.reduced();
        (r.denominator_weights.is_empty() || r.numerator.is_empty()).then_some(r.numerator)
    }

    /// Multiply by `∏ (1 - t^{e})`.
    pub fn times_one_minus(&self, exps: &[u32]) -> HilbertSeries {
        let num = exps
            .iter()
            .fold(self.numerator.clone(), |acc, &e| tpoly::mul(&acc, &tpoly::one_minus(e)));
        HilbertSeries::new(num, self.denominator_weights.clone())
    }

    /// Express over a new denominator `∏ (1 - t^{w})`, which must be a
    /// multiple of the current one as a multiset.
    pub fn over_denominator(&self, weights: &[u32]) -> Option<HilbertSeries> {
        let mut remaining: Vec<u32> = weights.to_vec();
        for w in &self.denominator_weights {
            let pos = remaining.iter().position(|x| x == w)?;
            remaining.swap_remove(pos);
        }
        Some(HilbertSeries::new(
            remaining
                .iter()
                .fold(self.numerator.clone(), |acc, &e| tpoly::mul(&acc, &tpoly::one_minus(e))),
            weights.to_vec(),
        ))
    }

    /// Power-series coefficients up to and including degree `upto`.
    pub fn expand(&self, upto: usize) -> Vec<i64> {
        let mut coeffs = vec![0i64; upto + 1];
        for (k, &c) in self.numerator.iter().enumerate().take(upto + 1) {
            coeffs[k] = c;
        }
        for &w in &self.denominator_weights {
            let w = w as usize;
            for k in w..=upto {
                coeffs[k] += coeffs[k - w];
            }
        }
        coeffs
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = tpoly::render(&self.numerator);
        if self.denominator_weights.is_empty() {
            return write!(f, "{num}");
        }
        let den: Vec<String> = self
            .denominator_weights
            .iter()
            .map(|w| format!("(1 - t^{w})"))
            .collect();
        write!(f, "({num})/({})", den.join("*"))
    }
}

/// Numerator of the Hilbert series of `k[x]/(monomials)` over
/// `∏ (1 - t^{weights_i})`, by pivoting on variables of minimal generators.
pub fn monomial_ideal_numerator(gens: &[Monomial], weights: &[u32]) -> Vec<i64> {
    let deg = |m: &Monomial| -> u32 { m.exps().iter().zip(weights).map(|(e, w)| e * w).sum() };
    let mut gens = minimalize(gens.to_vec());
    if gens.iter().any(Monomial::is_one) {
        return Vec::new();
    }
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().all(|m| m.pure_power_var().is_some()) {
        return gens
            .iter()
            .fold(vec![1], |acc, m| tpoly::mul(&acc, &tpoly::one_minus(deg(m))));
    }
    // Pivot on the variable occurring in the most non-pure generators.
    let n = weights.len();
    let mut counts = vec![0usize; n];
    for m in gens.iter().filter(|m| m.pure_power_var().is_none()) {
        for (i, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let var = (0..n).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let e = gens
        .iter()
        .filter(|m| m.pure_power_var().is_none() && m.exp(var) > 0)
        .map(|m| m.exp(var))
        .min()
        .unwrap();
    let pivot = Monomial::one(n).with_exp(var, e);

    // N(M) = N(M + p) + t^{deg p} N(M : p)
    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .drain(..)
        .map(|m| m.with_exp(var, m.exp(var).saturating_sub(e)))
        .collect();
    let a = monomial_ideal_numerator(&plus, weights);
    let b = monomial_ideal_numerator(&colon, weights);
    tpoly::add(&a, &tpoly::shift(&b, deg(&pivot) as usize))
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(Monomial::total_degree);
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Hilbert series read off the leading-term ideal of a basis.
pub fn hilbert_series_of_basis<F: Field>(gb: &GroebnerBasis<F>) -> HilbertSeries {
    let weights = gb.ring().weights().to_vec();
    HilbertSeries::new(monomial_ideal_numerator(&gb.leading_monomials(), &weights), weights)
}

fn check_homogeneous<F: Field>(gens: &[Polynomial<F>]) -> Result<()> {
    for g in gens {
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(g.to_string()));
        }
    }
    Ok(())
}

/// Hilbert series of `ring / (gens)` for weighted-homogeneous generators.
pub fn hilbert_series<F: Field>(ring: &std::sync::Arc<WeightedRing>, gens: &[Polynomial<F>]) -> Result<HilbertSeries> {
    check_homogeneous(gens)?;
    let gb = buchberger(ring, gens, &MonomialOrder::weighted_grevlex(ring));
    Ok(hilbert_series_of_basis(&gb))
}

/// Outcome of [`is_regular_sequence`]: the computed series and the series a
/// regular sequence of the same degrees would have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularSequenceCertificate {
    pub regular: bool,
    pub actual: HilbertSeries,
    pub expected: HilbertSeries,
}

/// A homogeneous sequence is regular iff the quotient has the Hilbert series
/// `∏ (1 - t^{deg g_i}) / ∏ (1 - t^{a_j})`.
pub fn is_regular_sequence<F: Field>(
    ring: &std::sync::Arc<WeightedRing>,
    gens: &[Polynomial<F>],
) -> Result<RegularSequenceCertificate> {
    check_homogeneous(gens)?;
    let weights = ring.weights().to_vec();
    let mut degrees = Vec::new();
    let mut degenerate = false;
    for g in gens {
        match g.weighted_degree().value() {
            Some(d) if d > 0 => degrees.push(d),
            _ => degenerate = true,
        }
    }
    let expected = HilbertSeries::new(
        degrees
            .iter()
            .fold(vec![1], |acc, &d| tpoly::mul(&acc, &tpoly::one_minus(d))),
        weights,
    );
    let actual = hilbert_series(ring, gens)?;
    Ok(RegularSequenceCertificate {
        regular: !degenerate && actual.same_series(&expected),
        actual,
        expected,
    })
}
