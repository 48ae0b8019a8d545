//! Models of regular B-varieties: chart coordinates with even weights, the
//! images of the coordinates under the nilpotent vector field, and the
//! canonical generators of the zero scheme.
//!
//! Built-ins are projective space (`pn`) and the type-A flag variety
//! (`flag`); custom models come from a JSON file.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{int, parse_polynomial, Monomial, Polynomial, QPoly, Rational, WeightedRing, V};
use crate::groebner::{grevlex_basis, standard_monomials};
use crate::rootsys::Root;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "parameter", rename_all = "snake_case")]
pub enum Provenance {
    ProjectiveSpace(usize),
    FlagA(usize),
    Custom,
}

impl Provenance {
    pub fn label(&self) -> String {
        match self {
            Provenance::ProjectiveSpace(n) => format!("pn:{n}"),
            Provenance::FlagA(l) => format!("flag:{l}"),
            Provenance::Custom => "custom".into(),
        }
    }
}

/// Symbolic data of the flag model `U⁻ ≅ open cell of G/B`.
#[derive(Clone, Debug)]
pub struct FlagModelData {
    pub rank: usize,
    /// Matrix position `(i, j)`, `i > j`, 1-based, per coordinate.
    pub positions: Vec<(usize, usize)>,
    /// The negative root `ε_i − ε_j` per coordinate.
    pub roots: Vec<Root>,
    /// Diagonal of `h`.
    pub h: Vec<i64>,
    /// Entries of `u⁻¹ e u` below the diagonal, per coordinate.
    pub v_alpha: Vec<QPoly>,
    /// Entries of `u⁻¹ h u − h` below the diagonal, per coordinate.
    pub w_alpha: Vec<QPoly>,
}

impl FlagModelData {
    pub fn coordinate_of(&self, root: &Root) -> Option<usize> {
        self.roots.iter().position(|r| r == root)
    }
}

#[derive(Clone, Debug)]
pub struct RegularModel {
    ring: Arc<WeightedRing>,
    zring: Arc<WeightedRing>,
    vimages: Vec<QPoly>,
    generators: Vec<QPoly>,
    provenance: Provenance,
    flag: Option<FlagModelData>,
}

impl RegularModel {
    /// Chart coordinates only.
    pub fn ring(&self) -> &Arc<WeightedRing> {
        &self.ring
    }

    /// Chart coordinates and `v`.
    pub fn zring(&self) -> &Arc<WeightedRing> {
        &self.zring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn weights(&self) -> &[u32] {
        self.ring.weights()
    }

    /// Images of the coordinates under the nilpotent vector field.
    pub fn vimages(&self) -> &[QPoly] {
        &self.vimages
    }

    /// Canonical generators of the zero-scheme ideal, in [`Self::zring`].
    pub fn generators(&self) -> &[QPoly] {
        &self.generators
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn flag_data(&self) -> Option<&FlagModelData> {
        self.flag.as_ref()
    }

    /// Same ring, field images and generators.
    pub fn same_presentation(&self, other: &RegularModel) -> bool {
        self.ring == other.ring && self.vimages == other.vimages && self.generators == other.generators
    }

    /// Coefficient of `v * x_i` in the `i`-th generator.
    pub fn normalization_coefficients(&self) -> Vec<Rational> {
        let vi = self.zring.v_index().expect("zring carries v");
        (0..self.nvars())
            .map(|i| {
                let m = Monomial::var(self.zring.nvars(), i).with_exp(vi, 1);
                self.generators[i].coeff(&m)
            })
            .collect()
    }

    /// Whether every generator has `v * x_i` coefficient `+a_i`.
    pub fn is_normalized(&self) -> bool {
        self.normalization_coefficients()
            .iter()
            .zip(self.weights())
            .all(|(c, &a)| *c == int(a as i64))
    }

    /// A copy with generator `index` multiplied by `factor`. Only meant for
    /// regression checks of the normalization.
    pub fn with_scaled_generator(&self, index: usize, factor: &Rational) -> RegularModel {
        let mut m = self.clone();
        m.generators[index] = m.generators[index].scale(factor);
        m
    }
}

/// The chart of projective space: `x_1..x_n` of weights `2, 4, ..., 2n`,
/// `V(x_j) = x_{j+1} − x_1 x_j` and `V(x_n) = −x_1 x_n`.
pub fn projective_space_model(n: usize) -> Result<RegularModel> {
    if n == 0 {
        return Err(Error::InvalidModel("projective space dimension must be at least 1".into()));
    }
    let names: Vec<String> = (1..=n).map(|j| format!("x{j}")).collect();
    let weights: Vec<u32> = (1..=n as u32).map(|j| 2 * j).collect();
    let ring = WeightedRing::new(&names, &weights)?;
    let x = |j: usize| Polynomial::var(&ring, j);
    let vimages = (0..n)
        .map(|j| {
            let shift = x(0).mul(&x(j));
            if j + 1 < n {
                x(j + 1).sub(&shift)
            } else {
                shift.neg()
            }
        })
        .collect();
    build(ring, vimages, None, Provenance::ProjectiveSpace(n), None)
}

type PolyMatrix = Vec<Vec<QPoly>>;

fn mat_mul(a: &PolyMatrix, b: &PolyMatrix, ring: &Arc<WeightedRing>) -> PolyMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(Polynomial::zero(ring), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc.add(&a[i][k].mul(&b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// The type-A flag model of rank `l`: coordinates `u_ij` (`i > j`) of the
/// lower unitriangular matrix `u`, weight `2(i − j)`. The generator for
/// `u_ij` is `2 v_α − v w_α` with `v_α`, `w_α` the `(i, j)` entries of
/// `u⁻¹ e u` and `u⁻¹ h u − h`.
pub fn flag_model_a(rank: usize) -> Result<RegularModel> {
    if rank == 0 {
        return Err(Error::InvalidModel("flag model rank must be at least 1".into()));
    }
    let n = rank + 1;
    let mut positions = Vec::new();
    for i in 2..=n {
        for j in 1..i {
            positions.push((i, j));
        }
    }
    let names: Vec<String> = positions.iter().map(|(i, j)| format!("u{i}{j}")).collect();
    let weights: Vec<u32> = positions.iter().map(|(i, j)| 2 * (i - j) as u32).collect();
    let ring = WeightedRing::new(&names, &weights)?;
    let zero = Polynomial::<Rational>::zero(&ring);
    let one = Polynomial::<Rational>::one(&ring);

    let mut u: PolyMatrix = vec![vec![zero.clone(); n]; n];
    for i in 0..n {
        u[i][i] = one.clone();
    }
    for (k, &(i, j)) in positions.iter().enumerate() {
        u[i - 1][j - 1] = Polynomial::var(&ring, k);
    }
    // Back-substitution: (u⁻¹)_ij = −Σ_{j ≤ k < i} u_ik (u⁻¹)_kj
    let mut uinv: PolyMatrix = vec![vec![zero.clone(); n]; n];
    for j in 0..n {
        uinv[j][j] = one.clone();
        for i in j + 1..n {
            let mut s = zero.clone();
            for k in j..i {
                s = s.add(&u[i][k].mul(&uinv[k][j]));
            }
            uinv[i][j] = s.neg();
        }
    }
    let mut e: PolyMatrix = vec![vec![zero.clone(); n]; n];
    for j in 0..rank {
        e[j][j + 1] = one.clone();
    }
    let h: Vec<i64> = (0..n).map(|k| rank as i64 - 2 * k as i64).collect();
    let mut hm: PolyMatrix = vec![vec![zero.clone(); n]; n];
    for k in 0..n {
        hm[k][k] = Polynomial::constant(&ring, int(h[k]));
    }
    let ueu = mat_mul(&mat_mul(&uinv, &e, &ring), &u, &ring);
    let uhu = mat_mul(&mat_mul(&uinv, &hm, &ring), &u, &ring);

    let v_alpha: Vec<QPoly> = positions.iter().map(|&(i, j)| ueu[i - 1][j - 1].clone()).collect();
    let w_alpha: Vec<QPoly> = positions.iter().map(|&(i, j)| uhu[i - 1][j - 1].clone()).collect();
    let roots = positions.iter().map(|&(i, j)| Root::from_epsilon_pair(rank, i, j)).collect();

    let zring = ring.with_v();
    let vz = Polynomial::named(&zring, V);
    let mut generators = Vec::new();
    for k in 0..positions.len() {
        let f = v_alpha[k]
            .embed(&zring)?
            .scale(&int(2))
            .sub(&vz.mul(&w_alpha[k].embed(&zring)?));
        generators.push(f);
    }
    let data = FlagModelData {
        rank,
        positions,
        roots,
        h,
        v_alpha: v_alpha.clone(),
        w_alpha,
    };
    let mut model = build(ring, v_alpha, Some(generators), Provenance::FlagA(rank), Some(data))?;
    // Fix the sign so that the v * u_α coefficient is +a_α.
    for (i, c) in model.normalization_coefficients().into_iter().enumerate() {
        if c == int(-(model.weights()[i] as i64)) {
            model.generators[i] = model.generators[i].neg();
        }
    }
    debug_assert!(model.is_normalized());
    Ok(model)
}

/// A user-supplied model; the field images live in `ring` (which must not
/// contain `v`).
pub fn custom_model(ring: Arc<WeightedRing>, vimages: Vec<QPoly>) -> Result<RegularModel> {
    if ring.has_v() {
        return Err(Error::InvalidModel(format!("`{V}` is reserved and cannot be a coordinate")));
    }
    if ring.nvars() == 0 {
        return Err(Error::InvalidModel("a model needs at least one coordinate".into()));
    }
    if vimages.len() != ring.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "{} field images for {} coordinates",
            vimages.len(),
            ring.nvars()
        )));
    }
    for p in &vimages {
        if p.ring() != &ring {
            return Err(Error::RingMismatch(format!("field image {p} is not in {}", ring.describe())));
        }
    }
    build(ring, vimages, None, Provenance::Custom, None)
}

/// The JSON model file: coordinates, weights, and the field image of each
/// coordinate as an expression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub coordinates: Vec<String>,
    pub weights: Vec<u32>,
    #[serde(rename = "V")]
    pub vimages: BTreeMap<String, String>,
}

impl ModelFile {
    pub fn from_model(m: &RegularModel) -> Self {
        ModelFile {
            coordinates: m.ring.names().to_vec(),
            weights: m.weights().to_vec(),
            vimages: m
                .ring
                .names()
                .iter()
                .cloned()
                .zip(m.vimages.iter().map(|p| p.to_string()))
                .collect(),
        }
    }

    pub fn build(&self) -> Result<RegularModel> {
        if self.coordinates.len() != self.weights.len() {
            return Err(Error::InvalidModel(format!(
                "{} coordinates but {} weights",
                self.coordinates.len(),
                self.weights.len()
            )));
        }
        if self.coordinates.iter().any(|c| c == V) {
            return Err(Error::InvalidModel(format!("`{V}` is reserved and cannot be a coordinate")));
        }
        let ring = WeightedRing::new(&self.coordinates, &self.weights)?;
        for key in self.vimages.keys() {
            if ring.index_of(key).is_none() {
                return Err(Error::InvalidModel(format!("field image given for unknown coordinate `{key}`")));
            }
        }
        let vimages = self
            .coordinates
            .iter()
            .map(|c| {
                let text = self
                    .vimages
                    .get(c)
                    .ok_or_else(|| Error::InvalidModel(format!("no field image for coordinate `{c}`")))?;
                parse_polynomial(text, &ring)
            })
            .collect::<Result<Vec<_>>>()?;
        custom_model(ring, vimages)
    }
}

fn build(
    ring: Arc<WeightedRing>,
    vimages: Vec<QPoly>,
    generators: Option<Vec<QPoly>>,
    provenance: Provenance,
    flag: Option<FlagModelData>,
) -> Result<RegularModel> {
    for (i, p) in vimages.iter().enumerate() {
        let expected = ring.weight(i) + 2;
        match p.weighted_degree() {
            crate::exactalg::Degree::Mixed => return Err(Error::NotHomogeneous(format!("V({}) = {p}", ring.name(i)))),
            crate::exactalg::Degree::Homogeneous(d) if d != expected => {
                return Err(Error::DegreeMismatch {
                    coordinate: ring.name(i).to_string(),
                    expected,
                    found: d.to_string(),
                })
            }
            _ => {}
        }
    }
    let zring = ring.with_v();
    let generators = match generators {
        Some(g) => g,
        None => canonical_generators(&ring, &zring, &vimages)?,
    };
    let model = RegularModel {
        ring,
        zring,
        vimages,
        generators,
        provenance,
        flag,
    };
    for (i, g) in model.generators.iter().enumerate() {
        let expected = model.ring.weight(i) + 2;
        if g.weighted_degree().value() != Some(expected) {
            return Err(Error::DegreeMismatch {
                coordinate: model.ring.name(i).to_string(),
                expected,
                found: format!("{:?}", g.weighted_degree()),
            });
        }
    }
    if validate_regular(&model).dimension.is_none() {
        return Err(Error::NotIsolatedZero);
    }
    Ok(model)
}

/// `g_i = a_i v x_i − 2 V(x_i)`.
fn canonical_generators(ring: &Arc<WeightedRing>, zring: &Arc<WeightedRing>, vimages: &[QPoly]) -> Result<Vec<QPoly>> {
    let v = Polynomial::named(zring, V);
    vimages
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let lin = Polynomial::var(zring, i).mul(&v).scale(&int(ring.weight(i) as i64));
            Ok(lin.sub(&p.embed(zring)?.scale(&int(2))))
        })
        .collect()
}

/// Evidence that the origin is an isolated zero of the field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityCertificate {
    /// `dim k[x]/(V(x_1), ..., V(x_n))`, `None` when infinite.
    pub dimension: Option<usize>,
    pub homogeneous: bool,
    /// `∏ (a_i + 2)/a_i`, the dimension of a complete intersection of
    /// these degrees.
    pub predicted_dimension: String,
    pub degrees: Vec<u32>,
}

pub fn validate_regular(m: &RegularModel) -> RegularityCertificate {
    let homogeneous = m.vimages.iter().all(Polynomial::is_homogeneous);
    let gb = grevlex_basis(&m.ring, &m.vimages);
    let dimension = standard_monomials(&gb).ok().map(|b| b.len());
    let predicted = m
        .weights()
        .iter()
        .fold(int(1), |acc, &a| acc * Rational::new((a + 2).into(), a.into()));
    RegularityCertificate {
        dimension,
        homogeneous,
        predicted_dimension: predicted.to_string(),
        degrees: m.generators.iter().filter_map(|g| g.weighted_degree().value()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(m: &RegularModel, s: &str) -> QPoly {
        parse_polynomial(s, m.ring()).unwrap()
    }

    #[test]
    fn projective_space_fields() {
        let p2 = projective_space_model(2).unwrap();
        assert_eq!(p2.vimages(), &[parse(&p2, "x2 - x1^2"), parse(&p2, "-x1*x2")]);
        let p1 = projective_space_model(1).unwrap();
        assert_eq!(p1.vimages(), &[parse(&p1, "-x1^2")]);
        assert_eq!(projective_space_model(3).unwrap().weights(), &[2, 4, 6]);
        assert!(p2.is_normalized());
    }

    #[test]
    fn projective_plane_generators() {
        let p2 = projective_space_model(2).unwrap();
        let z = p2.zring();
        let expected = [
            parse_polynomial("2*v*x1 - 2*x2 + 2*x1^2", z).unwrap(),
            parse_polynomial("4*v*x2 + 2*x1*x2", z).unwrap(),
        ];
        assert_eq!(p2.generators(), &expected);
    }

    #[test]
    fn flag_rank_two_entries() {
        let f = flag_model_a(2).unwrap();
        assert_eq!(f.ring().names(), &["u21", "u31", "u32"]);
        assert_eq!(f.weights(), &[2, 4, 2]);
        let d = f.flag_data().unwrap();
        // hand product of 3x3 matrices with a = u21, b = u31, c = u32
        let expect_v = ["u31 - u21^2", "u21^2*u32 - u21*u31 - u31*u32", "u21*u32 - u31 - u32^2"];
        let expect_w = ["-2*u21", "2*u21*u32 - 4*u31", "-2*u32"];
        for k in 0..3 {
            assert_eq!(d.v_alpha[k], parse(&f, expect_v[k]));
            assert_eq!(d.w_alpha[k], parse(&f, expect_w[k]));
        }
        assert_eq!(d.h, vec![2, 0, -2]);
        assert_eq!(d.roots[1], Root::new(vec![-1, -1]));
        assert!(f.is_normalized());
        let degrees: Vec<u32> = f.generators().iter().map(|g| g.weighted_degree().value().unwrap()).collect();
        assert_eq!(degrees, [4, 6, 4]);
    }

    #[test]
    fn flag_rank_one() {
        let f = flag_model_a(1).unwrap();
        assert_eq!(f.nvars(), 1);
        assert_eq!(f.generators()[0].weighted_degree().value(), Some(4));
    }

    #[test]
    fn custom_models() {
        let p2 = projective_space_model(2).unwrap();
        let again = ModelFile::from_model(&p2).build().unwrap();
        assert!(again.same_presentation(&p2));
        assert_eq!(again.provenance(), &Provenance::Custom);

        let r = WeightedRing::new(&["x1"], &[2]).unwrap();
        let zero = custom_model(r.clone(), vec![Polynomial::zero(&r)]).unwrap_err();
        assert_eq!(zero.code(), "NOT_ISOLATED_ZERO");
        let cube = custom_model(r.clone(), vec![parse_polynomial("x1^3", &r).unwrap()]).unwrap_err();
        assert_eq!(
            cube,
            Error::DegreeMismatch {
                coordinate: "x1".into(),
                expected: 4,
                found: "6".into()
            }
        );
        let r2 = WeightedRing::new(&["x1", "x2"], &[2, 4]).unwrap();
        let mixed = custom_model(
            r2.clone(),
            vec![parse_polynomial("x2 + x1", &r2).unwrap(), parse_polynomial("x1*x2", &r2).unwrap()],
        )
        .unwrap_err();
        assert_eq!(mixed.code(), "NOT_HOMOGENEOUS");
    }

    #[test]
    fn regularity_certificates() {
        let c = validate_regular(&projective_space_model(3).unwrap());
        assert_eq!(c.dimension, Some(4));
        assert_eq!(c.predicted_dimension, "4");
        let f = validate_regular(&flag_model_a(2).unwrap());
        assert_eq!(f.dimension, Some(6));
        assert_eq!(f.predicted_dimension, "6");
    }
}
