//! Sparse multivariate polynomials over a weighted graded ring.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::field::{Field, Rational};
use super::ratfunc::RatFunc;
use super::ring::{Monomial, WeightedRing};
use super::unipoly::UniPoly;

/// Result of [`Polynomial::weighted_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    /// The zero polynomial, homogeneous of every degree.
    ZeroPoly,
    Homogeneous(u32),
    Mixed,
}

impl Degree {
    pub fn value(self) -> Option<u32> {
        match self {
            Degree::Homogeneous(d) => Some(d),
            _ => None,
        }
    }
}

/// A polynomial with coefficients in `F`. No zero coefficients are stored.
#[derive(Clone, Debug)]
pub struct Polynomial<F: Field> {
    ring: Arc<WeightedRing>,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

/// Graded reverse lexicographic comparison by weighted degree, ties broken by
/// the reverse of the ring's variable order. This is the printing order.
pub fn grevlex_cmp(ring: &WeightedRing, a: &Monomial, b: &Monomial) -> Ordering {
    ring.weighted_degree(a)
        .cmp(&ring.weighted_degree(b))
        .then_with(|| {
            for i in (0..a.len()).rev() {
                match a.exp(i).cmp(&b.exp(i)) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        })
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<WeightedRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<WeightedRing>, c: F) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<WeightedRing>) -> Self {
        Self::constant(ring, F::one())
    }

    pub fn term(ring: &Arc<WeightedRing>, m: Monomial, c: F) -> Self {
        assert_eq!(m.len(), ring.nvars(), "monomial length does not match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// The variable with index `i`.
    pub fn var(ring: &Arc<WeightedRing>, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), F::one())
    }

    /// The variable named `name`. Panics if absent.
    pub fn named(ring: &Arc<WeightedRing>, name: &str) -> Self {
        let i = ring
            .index_of(name)
            .unwrap_or_else(|| panic!("no variable `{name}` in {}", ring.describe()));
        Self::var(ring, i)
    }

    pub fn from_terms(ring: &Arc<WeightedRing>, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, F)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials from different rings: {} vs {}",
            self.ring.describe(),
            other.ring.describe()
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Weighted degree if all terms share one, else [`Degree::Mixed`].
    pub fn weighted_degree(&self) -> Degree {
        let mut degs = self.terms.keys().map(|m| self.ring.weighted_degree(m));
        match degs.next() {
            None => Degree::ZeroPoly,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Degree::Homogeneous(d)
                } else {
                    Degree::Mixed
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weighted_degree() != Degree::Mixed
    }

    /// Largest weighted degree of any term; `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.ring.weighted_degree(m)).max()
    }

    /// The homogeneous component of weighted degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.weighted_degree(m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                out.add_term(m.with_exp(i, e - 1), &c.mul(&F::from_i64(e as i64)));
            }
        }
        out
    }

    pub fn partial_named(&self, name: &str) -> Result<Self> {
        let i = self.ring.index_of(name).ok_or_else(|| Error::UnknownVariable {
            name: name.to_string(),
            position: 0,
        })?;
        Ok(self.partial(i))
    }

    /// Terms sorted descending in the printing order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &F)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| grevlex_cmp(&self.ring, b.0, a.0));
        ts
    }

    /// Simultaneous substitution into `target`. Variables of `self` that are
    /// not assigned are mapped by name into `target`.
    pub fn substitute_into(
        &self,
        target: &Arc<WeightedRing>,
        assignment: &HashMap<String, Polynomial<F>>,
    ) -> Result<Self> {
        let mut images = Vec::with_capacity(self.ring.nvars());
        for name in self.ring.names() {
            match assignment.get(name) {
                Some(p) => {
                    if **p.ring() != **target {
                        return Err(Error::RingMismatch(format!(
                            "value for `{name}` lives in {}, expected {}",
                            p.ring().describe(),
                            target.describe()
                        )));
                    }
                    images.push(p.clone());
                }
                None => match target.index_of(name) {
                    Some(j) => images.push(Polynomial::var(target, j)),
                    None => {
                        return Err(Error::RingMismatch(format!(
                            "variable `{name}` is unassigned and absent from {}",
                            target.describe()
                        )))
                    }
                },
            }
        }
        let mut powers: Vec<Vec<Polynomial<F>>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Substitution within the same ring.
    pub fn substitute(&self, assignment: &HashMap<String, Polynomial<F>>) -> Result<Self> {
        let ring = self.ring.clone();
        self.substitute_into(&ring, assignment)
    }

    /// Rename into a ring that contains all of this ring's variables.
    pub fn embed(&self, target: &Arc<WeightedRing>) -> Result<Self> {
        let map: Vec<usize> = self
            .ring
            .names()
            .iter()
            .map(|n| {
                target.index_of(n).ok_or_else(|| {
                    Error::RingMismatch(format!("`{n}` is absent from {}", target.describe()))
                })
            })
            .collect::<Result<_>>()?;
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, &k) in m.exps().iter().enumerate() {
                e[map[i]] = k;
            }
            out.add_term(Monomial::new(e), c);
        }
        Ok(out)
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn max_bit_length(&self) -> u64 {
        self.terms.values().map(Field::bit_length).max().unwrap_or(0)
    }
}

impl Polynomial<Rational> {
    /// Move `v` from the variables into the coefficient field ℚ(v).
    pub fn to_param_field(&self) -> Polynomial<RatFunc> {
        let target = self.ring.without_v();
        let vi = self.ring.v_index();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let (mono, k) = match vi {
                Some(vi) => {
                    let mut e = m.exps().to_vec();
                    let k = e.remove(vi);
                    (Monomial::new(e), k)
                }
                None => (m.clone(), 0),
            };
            out.add_term(mono, &RatFunc::monomial(c.clone(), k as usize));
        }
        out
    }

    /// Specialize `v` to a rational value, landing in the ring without `v`.
    pub fn specialize_v(&self, v0: &Rational) -> Polynomial<Rational> {
        let target = self.ring.without_v();
        let Some(vi) = self.ring.v_index() else {
            return self.clone();
        };
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut e = m.exps().to_vec();
            let k = e.remove(vi);
            out.add_term(Monomial::new(e), &(c * num_traits::pow(v0.clone(), k as usize)));
        }
        out
    }

    /// The univariate polynomial in `v` if only `v` occurs.
    pub fn as_v_poly(&self) -> Option<UniPoly<Rational>> {
        let vi = self.ring.v_index();
        let mut coeffs: Vec<Rational> = Vec::new();
        for (m, c) in &self.terms {
            let k = match vi {
                Some(vi) => {
                    if m.exps().iter().enumerate().any(|(i, &e)| i != vi && e > 0) {
                        return None;
                    }
                    m.exp(vi) as usize
                }
                None => {
                    if !m.is_one() {
                        return None;
                    }
                    0
                }
            };
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Field::zero());
            }
            coeffs[k] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }
}

impl Polynomial<RatFunc> {
    /// Inverse of [`Polynomial::to_param_field`], defined when every
    /// coefficient is a polynomial in `v`.
    pub fn from_param_field(&self, target: &Arc<WeightedRing>) -> Option<Polynomial<Rational>> {
        let vi = target.v_index()?;
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let p = c.as_polynomial()?;
            for (k, a) in p.coeffs().iter().enumerate() {
                let mut e = m.exps().to_vec();
                e.insert(vi, k as u32);
                out.add_term(Monomial::new(e), a);
            }
        }
        Some(out)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.prints_negative();
            let abs = if negative { c.neg() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = if abs.is_compound() {
                format!("({abs})")
            } else {
                abs.to_string()
            };
            if m.is_one() {
                write!(f, "{coeff}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.render(&self.ring))?;
            } else {
                write!(f, "{coeff}*{}", m.render(&self.ring))?;
            }
        }
        Ok(())
    }
}

/// Determinant of a square matrix of polynomials.
///
/// Cofactor expansion up to size 4, fraction-free (Bareiss) elimination
/// beyond that.
pub fn determinant<F: Field>(ring: &Arc<WeightedRing>, rows: &[Vec<Polynomial<F>>]) -> Result<Polynomial<F>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("{n} rows of unequal or wrong length")));
    }
    if n <= 4 {
        Ok(cofactor_det(ring, rows))
    } else {
        Ok(bareiss_det(ring, rows))
    }
}

pub(crate) fn cofactor_det<F: Field>(ring: &Arc<WeightedRing>, rows: &[Vec<Polynomial<F>>]) -> Polynomial<F> {
    let n = rows.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    // Expansion along the first row, memoized over the set of remaining columns.
    fn rec<F: Field>(
        ring: &Arc<WeightedRing>,
        rows: &[Vec<Polynomial<F>>],
        row: usize,
        cols: u32,
        memo: &mut HashMap<u32, Polynomial<F>>,
    ) -> Polynomial<F> {
        if row == rows.len() {
            return Polynomial::one(ring);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(ring);
        let mut sign = true;
        for c in 0..rows.len() {
            if cols & (1 << c) == 0 {
                continue;
            }
            let entry = &rows[row][c];
            if !entry.is_zero() {
                let minor = rec(ring, rows, row + 1, cols & !(1 << c), memo);
                let t = entry.mul(&minor);
                acc = if sign { acc.add(&t) } else { acc.sub(&t) };
            }
            sign = !sign;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let mut memo = HashMap::new();
    rec(ring, rows, 0, (1u32 << n) - 1, &mut memo)
}

pub(crate) fn bareiss_det<F: Field>(ring: &Arc<WeightedRing>, rows: &[Vec<Polynomial<F>>]) -> Polynomial<F> {
    let n = rows.len();
    let mut a: Vec<Vec<Polynomial<F>>> = rows.to_vec();
    let mut negate = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Polynomial::zero(ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = exact_div(&num, &prev).expect("Bareiss division must be exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Exact multivariate division; `None` if `divisor` does not divide `p`.
pub fn exact_div<F: Field>(p: &Polynomial<F>, divisor: &Polynomial<F>) -> Option<Polynomial<F>> {
    assert!(!divisor.is_zero(), "division by zero polynomial");
    if divisor.is_constant() {
        return Some(p.scale(&divisor.constant_term().inv()));
    }
    // Lexicographic leading terms (BTreeMap order) make the quotient unique.
    let (lm, lc) = divisor.terms.iter().next_back().unwrap();
    let lc_inv = lc.inv();
    let mut rem = p.clone();
    let mut quot = Polynomial::zero(&p.ring);
    while let Some((m, c)) = rem.terms.iter().next_back() {
        let q = lm.quotient_of(m)?;
        let qc = c.mul(&lc_inv);
        rem = rem.sub(&divisor.mul_monomial(&q, &qc));
        quot.add_term(q, &qc);
    }
    Some(quot)
}

/// Jacobian determinant of `polys` with respect to the variables `vars`.
pub fn jacobian_determinant<F: Field>(polys: &[Polynomial<F>], vars: &[usize]) -> Result<Polynomial<F>> {
    if polys.len() != vars.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} polynomials in {} variables",
            polys.len(),
            vars.len()
        )));
    }
    let Some(first) = polys.first() else {
        return Err(Error::DimensionMismatch("empty system".into()));
    };
    let ring = first.ring().clone();
    for (i, &a) in vars.iter().enumerate() {
        if a >= ring.nvars() {
            return Err(Error::DimensionMismatch(format!("variable index {a} out of range")));
        }
        if vars[..i].contains(&a) {
            return Err(Error::DimensionMismatch(format!("variable index {a} repeated")));
        }
    }
    let rows: Vec<Vec<Polynomial<F>>> = polys
        .iter()
        .map(|p| vars.iter().map(|&x| p.partial(x)).collect())
        .collect();
    determinant(&ring, &rows)
}
