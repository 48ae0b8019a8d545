//! Finite-dimensional quotient algebras `k[x]/I` presented by a Gröbner basis.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix, Monomial, Polynomial};

use super::basis::GroebnerBasis;

/// Monomials outside the leading-term ideal, sorted ascending in the basis
/// order.
pub fn standard_monomials<F: Field>(gb: &GroebnerBasis<F>) -> Result<Vec<Monomial>> {
    if !gb.is_zero_dimensional() {
        return Err(Error::NotZeroDimensional);
    }
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    let n = gb.ring().nvars();
    let lms = gb.leading_monomials();
    let mut bound = vec![0u32; n];
    for m in &lms {
        if let Some(i) = m.pure_power_var() {
            let e = m.exp(i);
            if bound[i] == 0 || e < bound[i] {
                bound[i] = e;
            }
        }
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn walk(i: usize, exps: &mut Vec<u32>, bound: &[u32], lms: &[Monomial], out: &mut Vec<Monomial>) {
        if i == exps.len() {
            let m = Monomial::new(exps.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            return;
        }
        for e in 0..bound[i] {
            exps[i] = e;
            // Prune early: a partial exponent vector already divisible by a
            // leading monomial only grows.
            let partial = Monomial::new(exps.iter().enumerate().map(|(k, &x)| if k <= i { x } else { 0 }).collect());
            if lms.iter().any(|l| l.divides(&partial)) {
                break;
            }
            walk(i + 1, exps, bound, lms, out);
        }
        exps[i] = 0;
    }
    walk(0, &mut exps, &bound, &lms, &mut out);
    let order = gb.order();
    out.sort_by(|a, b| order.cmp(a, b));
    Ok(out)
}

/// The quotient algebra with its standard-monomial basis.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra<F: Field> {
    gb: GroebnerBasis<F>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl<F: Field> QuotientAlgebra<F> {
    pub fn new(gb: GroebnerBasis<F>) -> Result<Self> {
        let basis = standard_monomials(&gb)?;
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(QuotientAlgebra { gb, basis, index })
    }

    pub fn groebner(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_element(&self, i: usize) -> Polynomial<F> {
        Polynomial::term(self.gb.ring(), self.basis[i].clone(), F::one())
    }

    /// Coordinates of the normal form of `f` in the standard basis.
    pub fn coords(&self, f: &Polynomial<F>) -> Vec<F> {
        let nf = self.gb.normal_form(f);
        let mut out = vec![F::zero(); self.dim()];
        for (m, c) in nf.terms() {
            out[self.index[m]] = c.clone();
        }
        out
    }

    pub fn from_coords(&self, coords: &[F]) -> Polynomial<F> {
        Polynomial::from_terms(
            self.gb.ring(),
            self.basis.iter().cloned().zip(coords.iter().cloned()),
        )
    }

    /// Matrix of multiplication by `f`; column `j` holds the coordinates of
    /// `f * b_j`.
    pub fn multiplication_matrix(&self, f: &Polynomial<F>) -> Matrix<F> {
        let f = self.gb.normal_form(f);
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (j, b) in self.basis.iter().enumerate() {
            let col = self.coords(&f.mul_monomial(b, &F::one()));
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// The linear functional `g ↦ Tr(M_g)` as its values on the basis.
    pub fn trace_functional(&self) -> Vec<F> {
        (0..self.dim())
            .map(|i| self.multiplication_matrix(&self.basis_element(i)).trace())
            .collect()
    }

    /// `Tr(M_f)` computed from a precomputed trace functional.
    pub fn trace_with(&self, functional: &[F], f: &Polynomial<F>) -> F {
        self.coords(f)
            .iter()
            .zip(functional)
            .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    /// Gram matrix of the trace form `(f, g) ↦ Tr(M_{fg})` on the basis.
    pub fn trace_form(&self) -> Matrix<F> {
        let functional = self.trace_functional();
        let n = self.dim();
        let mut t = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let prod = Polynomial::term(self.gb.ring(), self.basis[i].mul(&self.basis[j]), F::one());
                let x = self.trace_with(&functional, &prod);
                t.set(i, j, x.clone());
                t.set(j, i, x);
            }
        }
        t
    }

    /// Determinant of the trace form; nonzero iff the algebra is reduced.
    pub fn trace_form_determinant(&self) -> F {
        self.trace_form().determinant()
    }

    /// Inverse of `f` in the algebra, if it is a unit.
    pub fn inverse(&self, f: &Polynomial<F>) -> Option<Polynomial<F>> {
        let m = self.multiplication_matrix(f);
        let one = self.coords(&Polynomial::one(self.gb.ring()));
        m.solve(&one).map(|c| self.from_coords(&c))
    }
}

/// Determinant of the trace form of the zero-dimensional quotient.
pub fn trace_form_determinant<F: Field>(gb: &GroebnerBasis<F>) -> Result<F> {
    Ok(QuotientAlgebra::new(gb.clone())?.trace_form_determinant())
}

/// Matrix of multiplication by `f` in the standard-monomial basis.
pub fn multiplication_matrix<F: Field>(f: &Polynomial<F>, gb: &GroebnerBasis<F>) -> Result<Matrix<F>> {
    Ok(QuotientAlgebra::new(gb.clone())?.multiplication_matrix(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_polynomial, Field, Rational, WeightedRing};
    use crate::groebner::{buchberger, MonomialOrder};

    fn algebra(names: &[&str], weights: &[u32], gens: &[&str]) -> QuotientAlgebra<Rational> {
        let r = WeightedRing::new(names, weights).unwrap();
        let gens: Vec<_> = gens.iter().map(|g| parse_polynomial(g, &r).unwrap()).collect();
        QuotientAlgebra::new(buchberger(&r, &gens, &MonomialOrder::weighted_grevlex(&r))).unwrap()
    }

    #[test]
    fn projective_plane_standard_monomials() {
        let a = algebra(&["x1", "x2"], &[2, 4], &["x2 - x1^2", "x1*x2"]);
        let r = a.groebner().ring().clone();
        let rendered: Vec<String> = a.basis().iter().map(|m| m.render(&r)).collect();
        assert_eq!(rendered, ["1", "x1", "x1^2"]);
    }

    #[test]
    fn normal_form_of_x2_in_projective_plane() {
        // hand reduction by -x2 + x1*(x1 + v)
        let r = WeightedRing::new(&["x1", "x2", "v"], &[2, 4, 2]).unwrap();
        let gens: Vec<_> = ["2*v*x1 - 2*x2 + 2*x1^2", "4*v*x2 + 2*x1*x2"]
            .iter()
            .map(|g| parse_polynomial(g, &r).unwrap())
            .collect();
        let gb = buchberger(&r, &gens, &MonomialOrder::weighted_grevlex(&r));
        let nf = gb.normal_form(&parse_polynomial("x2", &r).unwrap());
        assert_eq!(nf, parse_polynomial("x1^2 + x1*v", &r).unwrap());
        assert_eq!(gb.normal_form(&Polynomial::one(&r)), Polynomial::one(&r));
    }

    #[test]
    fn multiplication_by_x1_has_expected_charpoly() {
        use crate::exactalg::{RatFunc, UniPoly};
        let r = WeightedRing::new(&["x1"], &[2]).unwrap();
        let rv = WeightedRing::new(&["x1", "v"], &[2, 2]).unwrap();
        let g = parse_polynomial("x1*(x1 + v)", &rv).unwrap().to_param_field();
        assert_eq!(**g.ring(), *r);
        let a = QuotientAlgebra::new(buchberger(g.ring(), std::slice::from_ref(&g), &MonomialOrder::weighted_grevlex(g.ring()))).unwrap();
        assert_eq!(a.dim(), 2);
        let cp = a.multiplication_matrix(&Polynomial::var(g.ring(), 0)).charpoly();
        assert_eq!(cp, UniPoly::new(vec![RatFunc::zero(), RatFunc::v(), RatFunc::one()]));
    }

    #[test]
    fn trace_form_detects_nilpotents() {
        let fat = algebra(&["x"], &[2], &["x^2"]);
        assert!(Field::is_zero(&fat.trace_form_determinant()));
        let two_points = algebra(&["x"], &[2], &["x*(x+1)"]);
        assert!(!Field::is_zero(&two_points.trace_form_determinant()));
    }

    #[test]
    fn identity_and_homomorphism() {
        let a = algebra(&["x"], &[2], &["x*(x+1)*(x+3)"]);
        let r = a.groebner().ring().clone();
        let one = Polynomial::one(&r);
        assert_eq!(a.multiplication_matrix(&one), Matrix::identity(3));
        assert_eq!(a.multiplication_matrix(&one).trace(), crate::exactalg::int(3));
        let f = parse_polynomial("x + 2", &r).unwrap();
        let g = parse_polynomial("x^2 - 1", &r).unwrap();
        let mf = a.multiplication_matrix(&f);
        let mg = a.multiplication_matrix(&g);
        assert_eq!(a.multiplication_matrix(&f.mul(&g)), mf.mul(&mg));
        assert_eq!(mf.mul(&mg), mg.mul(&mf));
    }

    #[test]
    fn not_zero_dimensional() {
        let r = WeightedRing::new(&["x", "y"], &[2, 2]).unwrap();
        let gb = buchberger(&r, &[parse_polynomial("x*y", &r).unwrap()], &MonomialOrder::weighted_grevlex(&r));
        assert_eq!(standard_monomials(&gb).unwrap_err(), Error::NotZeroDimensional);
    }
}
