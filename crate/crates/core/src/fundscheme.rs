//! The zero scheme of `2V − vW` on `X_o × A¹`: its ideal, flatness and
//! regularity certificates, fibers over `v = v0`, Hilbert series and the
//! components of projective space.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{int, Field, Polynomial, QPoly, QvPoly, RatFunc, Rational, UniPoly, WeightedRing, V};
use crate::groebner::{
    grevlex_basis, hilbert_series_of_basis, is_regular_sequence, GroebnerBasis, HilbertSeries, QuotientAlgebra,
    RegularSequenceCertificate,
};
use crate::regvariety::{Provenance, RegularModel};
use crate::serde_str;

/// The ideal `I(Z) ⊂ k[x_1..x_n, v]` with lazily computed Gröbner data.
#[derive(Clone, Debug)]
pub struct ZSchemeIdeal {
    model: RegularModel,
    groebner: OnceLock<GroebnerBasis<Rational>>,
    ordinary: OnceLock<GroebnerBasis<Rational>>,
    param: OnceLock<Result<QuotientAlgebra<RatFunc>>>,
}

pub fn zscheme_ideal(model: &RegularModel) -> Result<ZSchemeIdeal> {
    ZSchemeIdeal::new(model.clone())
}

impl ZSchemeIdeal {
    pub fn new(model: RegularModel) -> Result<Self> {
        for (i, g) in model.generators().iter().enumerate() {
            let expected = model.weights()[i] + 2;
            if g.weighted_degree().value() != Some(expected) {
                return Err(Error::DegreeMismatch {
                    coordinate: model.ring().name(i).to_string(),
                    expected,
                    found: format!("{:?}", g.weighted_degree()),
                });
            }
        }
        Ok(ZSchemeIdeal {
            model,
            groebner: OnceLock::new(),
            ordinary: OnceLock::new(),
            param: OnceLock::new(),
        })
    }

    pub fn model(&self) -> &RegularModel {
        &self.model
    }

    /// `k[x_1..x_n, v]`
    pub fn ring(&self) -> &Arc<WeightedRing> {
        self.model.zring()
    }

    pub fn generators(&self) -> &[QPoly] {
        self.model.generators()
    }

    pub fn nvars(&self) -> usize {
        self.model.nvars()
    }

    /// Weighted grevlex basis of `I(Z)` over ℚ.
    pub fn groebner(&self) -> &GroebnerBasis<Rational> {
        self.groebner.get_or_init(|| grevlex_basis(self.ring(), self.generators()))
    }

    /// Basis of the `v = 0` specialization in the coordinate ring.
    pub fn ordinary_groebner(&self) -> &GroebnerBasis<Rational> {
        self.ordinary.get_or_init(|| {
            let gens: Vec<QPoly> = self.generators().iter().map(|g| g.specialize_v(&int(0))).collect();
            grevlex_basis(self.model.ring(), &gens)
        })
    }

    /// `ℚ(v)[x]/I(Z)` with its standard-monomial basis.
    pub fn algebra(&self) -> Result<&QuotientAlgebra<RatFunc>> {
        self.param
            .get_or_init(|| {
                let gens: Vec<QvPoly> = self.generators().iter().map(QPoly::to_param_field).collect();
                QuotientAlgebra::new(grevlex_basis(self.model.ring(), &gens))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// A generator or class from the coordinate ring or from `k[x, v]`.
    pub fn lift(&self, f: &QPoly) -> Result<QPoly> {
        if f.ring() == self.ring() {
            Ok(f.clone())
        } else {
            f.embed(self.ring())
        }
    }

    pub fn parse(&self, text: &str) -> Result<QPoly> {
        crate::exactalg::parse_polynomial(text, self.ring())
    }

    /// Rank of `k[Z]` over `k[v]`: the standard-monomial count over ℚ(v),
    /// which must agree with the dimension of the `v = 0` fiber.
    pub fn flat_degree(&self) -> Result<usize> {
        let generic = self.algebra()?.dim();
        let special = crate::groebner::standard_monomials(self.ordinary_groebner())?.len();
        if generic != special {
            return Err(Error::CertificateFailed(format!(
                "generic rank {generic} differs from the v = 0 fiber dimension {special}"
            )));
        }
        Ok(generic)
    }

    /// `{g_1, ..., g_n, v}` must be a regular sequence.
    pub fn certify_regular_sequence(&self) -> Result<RegularSequenceCertificate> {
        let mut gens = self.generators().to_vec();
        gens.push(Polynomial::named(self.ring(), V));
        let cert = is_regular_sequence(self.ring(), &gens)?;
        if !cert.regular {
            return Err(Error::CertificateFailed(format!(
                "Hilbert series {} differs from the regular-sequence series {}",
                cert.actual, cert.expected
            )));
        }
        Ok(cert)
    }

    /// Specialize `v = v0` and describe the resulting finite algebra.
    pub fn fiber(&self, v0: &Rational) -> Result<FiberDecomposition> {
        let ring = self.model.ring();
        let gens: Vec<QPoly> = self.generators().iter().map(|g| g.specialize_v(v0)).collect();
        let algebra = QuotientAlgebra::new(grevlex_basis(ring, &gens))?;
        let det = algebra.trace_form_determinant();
        let charpolys: Vec<UniPoly<Rational>> = (0..ring.nvars())
            .map(|i| algebra.multiplication_matrix(&Polynomial::var(ring, i)).charpoly())
            .collect();
        let distinct_values = charpolys.iter().map(UniPoly::distinct_root_count).collect();
        Ok(FiberDecomposition {
            v0: v0.clone(),
            dimension: algebra.dim(),
            reduced: !Field::is_zero(&det),
            trace_form_determinant: det,
            charpolys,
            distinct_values,
        })
    }

    /// Hilbert series of `k[Z]` and of `k[Z]/(v)`.
    pub fn hilbert_series_z(&self) -> Result<(HilbertSeries, HilbertSeries)> {
        let full = hilbert_series_of_basis(self.groebner());
        let ordinary = hilbert_series_of_basis(self.ordinary_groebner());
        if !full.times_one_minus(&[2]).same_series(&ordinary) {
            return Err(Error::CertificateFailed(format!(
                "(1 - t^2) * {full} differs from {ordinary}"
            )));
        }
        Ok((full, ordinary))
    }

    /// Restriction of a class to the component through the `m`-th fixed
    /// point of projective space.
    pub fn component_restriction(&self, f: &QPoly, m: usize) -> Result<UniPoly<Rational>> {
        let data = component_data(self, m)?;
        let f = self.lift(f)?;
        let image = f.substitute(&data.assignment(self.ring()))?;
        Ok(image.as_v_poly().expect("the chain leaves only v"))
    }
}

/// The fiber of `Z` over `v = v0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiberDecomposition {
    #[serde(serialize_with = "serde_str::display")]
    pub v0: Rational,
    pub dimension: usize,
    pub reduced: bool,
    #[serde(serialize_with = "serde_str::display")]
    pub trace_form_determinant: Rational,
    /// Characteristic polynomial of multiplication by each coordinate.
    #[serde(serialize_with = "serde_str::display_vec")]
    pub charpolys: Vec<UniPoly<Rational>>,
    /// Number of distinct roots of each characteristic polynomial.
    pub distinct_values: Vec<usize>,
}

/// The chain `x_1 = −m v`, `x_{j+1} = x_j (x_1 + j v)` parametrizing the
/// component of `Z` through the `m`-th fixed point of projective space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentData {
    pub index: usize,
    pub dimension: usize,
}

impl ComponentData {
    /// The chain as an assignment of each `x_j` to a polynomial in `v`.
    pub fn assignment(&self, zring: &Arc<WeightedRing>) -> HashMap<String, QPoly> {
        let v = Polynomial::named(zring, V);
        projective_chain(zring, self.dimension, &v.scale(&int(-(self.index as i64))))
    }
}

/// `x_1 = start`, `x_{j+1} = x_j (x_1 + j v)` for `j < n`.
pub fn projective_chain(zring: &Arc<WeightedRing>, n: usize, start: &QPoly) -> HashMap<String, QPoly> {
    let v = Polynomial::named(zring, V);
    let mut out = HashMap::new();
    let mut x = start.clone();
    out.insert("x1".to_string(), x.clone());
    for j in 1..n {
        x = x.mul(&start.add(&v.scale(&int(j as i64))));
        out.insert(format!("x{}", j + 1), x.clone());
    }
    out
}

pub fn component_data(z: &ZSchemeIdeal, m: usize) -> Result<ComponentData> {
    let Provenance::ProjectiveSpace(n) = *z.model().provenance() else {
        return Err(Error::WrongProvenance);
    };
    if m > n {
        return Err(Error::InvalidModel(format!("component index {m} exceeds {n}")));
    }
    Ok(ComponentData { index: m, dimension: n })
}

/// Default nonzero specializations used for certification.
pub fn default_fiber_values() -> Vec<Rational> {
    vec![int(1), int(2), int(-1)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::tpoly;
    use crate::regvariety::{flag_model_a, projective_space_model};

    fn pn(n: usize) -> ZSchemeIdeal {
        zscheme_ideal(&projective_space_model(n).unwrap()).unwrap()
    }

    #[test]
    fn flat_degrees() {
        for n in 1..=3 {
            assert_eq!(pn(n).flat_degree().unwrap(), n + 1);
        }
        assert_eq!(zscheme_ideal(&flag_model_a(2).unwrap()).unwrap().flat_degree().unwrap(), 6);
    }

    #[test]
    fn projective_line_basis_is_monic_generator() {
        let z = pn(1);
        assert_eq!(z.groebner().elements(), vec![z.parse("x1*v + x1^2").unwrap()]);
        let a = z.algebra().unwrap();
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn regular_sequences() {
        assert!(pn(3).certify_regular_sequence().unwrap().regular);
        assert!(zscheme_ideal(&flag_model_a(2).unwrap()).unwrap().certify_regular_sequence().is_ok());
    }

    #[test]
    fn fibers() {
        let z = pn(2);
        let f1 = z.fiber(&int(1)).unwrap();
        assert_eq!(f1.dimension, 3);
        assert!(f1.reduced);
        // x (x + 1) (x + 2)
        assert_eq!(f1.charpolys[0], UniPoly::new(vec![int(0), int(2), int(3), int(1)]));
        let f0 = z.fiber(&int(0)).unwrap();
        assert_eq!(f0.dimension, 3);
        assert!(!f0.reduced);
        let f2 = pn(1).fiber(&int(2)).unwrap();
        // roots 0 and -2
        assert_eq!(f2.charpolys[0], UniPoly::new(vec![int(0), int(2), int(1)]));
        assert_eq!(f2.distinct_values, vec![2]);
    }

    #[test]
    fn series() {
        let (full, ordinary) = pn(1).hilbert_series_z().unwrap();
        assert!(full.same_series(&HilbertSeries::new(vec![1, 0, 1], vec![2])));
        assert_eq!(ordinary.as_polynomial(), Some(vec![1, 0, 1]));
        let (_, p2) = pn(2).hilbert_series_z().unwrap();
        assert_eq!(p2.as_polynomial(), Some(vec![1, 0, 1, 0, 1]));
        let (_, flag) = zscheme_ideal(&flag_model_a(2).unwrap()).unwrap().hilbert_series_z().unwrap();
        assert_eq!(flag.as_polynomial(), Some(tpoly::mul(&[1, 0, 1], &[1, 0, 1, 0, 1])));
    }

    #[test]
    fn component_restrictions() {
        let z = pn(3);
        let x1 = z.parse("x1").unwrap();
        let v = z.parse("v").unwrap();
        for m in 0..=3 {
            assert_eq!(z.component_restriction(&x1, m).unwrap(), UniPoly::monomial(int(-(m as i64)), 1));
            assert_eq!(z.component_restriction(&v, m).unwrap(), UniPoly::var());
            for g in z.generators() {
                assert!(z.component_restriction(g, m).unwrap().is_zero());
            }
        }
        let flag = zscheme_ideal(&flag_model_a(1).unwrap()).unwrap();
        assert_eq!(flag.component_restriction(&v.clone(), 0).unwrap_err(), Error::WrongProvenance);
    }
}
