//! Gröbner bases, normal forms, Hilbert series and finite quotient algebras.

pub mod basis;
pub mod hilbert;
pub mod order;
pub mod quotient;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Polynomial, WeightedRing};

pub use basis::{buchberger, GroebnerBasis};
pub use hilbert::{
    hilbert_series, hilbert_series_of_basis, is_regular_sequence, monomial_ideal_numerator, tpoly,
    HilbertSeries, RegularSequenceCertificate,
};
pub use order::{default_priority, MonomialOrder, OrderKind};
pub use quotient::{multiplication_matrix, standard_monomials, trace_form_determinant, QuotientAlgebra};

/// Reduced basis in weighted grevlex with the default priority.
pub fn grevlex_basis<F: Field>(ring: &Arc<WeightedRing>, gens: &[Polynomial<F>]) -> GroebnerBasis<F> {
    buchberger(ring, gens, &MonomialOrder::weighted_grevlex(ring))
}

/// Saturation `(gens) : x^∞` of a homogeneous ideal by the variable `var`,
/// returned as a reduced weighted-grevlex basis.
///
/// With `var` least significant in grevlex, dividing every basis element by
/// its largest power of `var` gives generators of the saturation.
pub fn saturate<F: Field>(ring: &Arc<WeightedRing>, gens: &[Polynomial<F>], var: usize) -> Result<GroebnerBasis<F>> {
    for g in gens {
        if !g.is_homogeneous() && !g.is_zero() {
            return Err(Error::NotHomogeneous(g.to_string()));
        }
    }
    let mut priority: Vec<usize> = order::default_priority(ring).into_iter().filter(|&i| i != var).collect();
    priority.push(var);
    let gb = buchberger(ring, gens, &MonomialOrder::new(OrderKind::WeightedGrevlex, ring, priority));
    let divided: Vec<Polynomial<F>> = gb
        .elements()
        .into_iter()
        .map(|g| {
            let k = g.terms().map(|(m, _)| m.exp(var)).min().unwrap_or(0);
            Polynomial::from_terms(
                ring,
                g.into_terms().map(|(m, c)| (m.with_exp(var, m.exp(var) - k), c)),
            )
        })
        .collect();
    Ok(grevlex_basis(ring, &divided))
}
