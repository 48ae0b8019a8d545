//! Buchberger's algorithm with the coprime and chain criteria.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use crate::exactalg::{Field, Monomial, Polynomial, WeightedRing};

use super::order::MonomialOrder;

type Term<F> = (Monomial, F);

/// Terms sorted descending in a monomial order.
#[derive(Clone, Debug)]
pub(crate) struct Sparse<F: Field> {
    pub(crate) terms: Vec<Term<F>>,
}

impl<F: Field> Sparse<F> {
    pub(crate) fn from_poly(p: &Polynomial<F>, order: &MonomialOrder) -> Self {
        let mut terms: Vec<Term<F>> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Sparse { terms }
    }

    pub(crate) fn to_poly(&self, ring: &Arc<WeightedRing>) -> Polynomial<F> {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = lc.inv();
                for t in &mut self.terms {
                    t.1 = t.1.mul(&inv);
                }
            }
        }
    }
}

/// `p - c * m * g`, all sorted descending.
fn sub_mul<F: Field>(p: &[Term<F>], c: &F, m: &Monomial, g: &[Term<F>], order: &MonomialOrder) -> Vec<Term<F>> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|(gm, gc)| (gm.mul(m), gc.mul(c))).peekable();
    while i < p.len() || gi.peek().is_some() {
        let ord = match (p.get(i), gi.peek()) {
            (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (bm, bc) = gi.next().unwrap();
                out.push((bm, bc.neg()));
            }
            Ordering::Equal => {
                let (_, bc) = gi.next().unwrap();
                let s = p[i].1.sub(&bc);
                if !s.is_zero() {
                    out.push((p[i].0.clone(), s));
                }
                i += 1;
            }
        }
    }
    out
}

/// Full reduction of `p` by monic `basis` elements.
pub(crate) fn reduce<F: Field>(p: &Sparse<F>, basis: &[&Sparse<F>], order: &MonomialOrder) -> Sparse<F> {
    let mut live = p.terms.clone();
    let mut start = 0;
    let mut rem = Vec::new();
    while start < live.len() {
        let (m, c) = &live[start];
        let divisor = basis
            .iter()
            .find_map(|g| g.lm().quotient_of(m).map(|q| (q, *g)));
        match divisor {
            Some((q, g)) => {
                let c = c.clone();
                live = sub_mul(&live[start..], &c, &q, &g.terms, order);
                start = 0;
            }
            None => {
                rem.push(live[start].clone());
                start += 1;
            }
        }
    }
    Sparse { terms: rem }
}

fn s_polynomial<F: Field>(f: &Sparse<F>, g: &Sparse<F>, order: &MonomialOrder) -> Sparse<F> {
    let lcm = f.lm().lcm(g.lm());
    let qf = f.lm().quotient_of(&lcm).unwrap();
    let qg = g.lm().quotient_of(&lcm).unwrap();
    let scaled_f: Vec<Term<F>> = f.terms[1..]
        .iter()
        .map(|(m, c)| (m.mul(&qf), c.clone()))
        .collect();
    Sparse {
        terms: sub_mul(&scaled_f, &F::one(), &qg, &g.terms[1..], order),
    }
}

/// A reduced Gröbner basis: monic, interreduced, sorted by leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<WeightedRing>,
    order: MonomialOrder,
    elements: Vec<Sparse<F>>,
    source: Vec<Polynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<WeightedRing> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> Vec<Polynomial<F>> {
        self.elements.iter().map(|s| s.to_poly(&self.ring)).collect()
    }

    pub fn source(&self) -> &[Polynomial<F>] {
        &self.source
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|s| s.lm().clone()).collect()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].lm().is_one()
    }

    pub(crate) fn sparse_elements(&self) -> Vec<&Sparse<F>> {
        self.elements.iter().collect()
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(**f.ring(), *self.ring, "normal form across rings");
        let s = Sparse::from_poly(f, &self.order);
        reduce(&s, &self.sparse_elements(), &self.order).to_poly(&self.ring)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Replays every S-polynomial and checks that it reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        let basis = self.sparse_elements();
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let s = s_polynomial(&self.elements[i], &self.elements[j], &self.order);
                if !reduce(&s, &basis, &self.order).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        let mut seen = vec![false; self.ring.nvars()];
        for s in &self.elements {
            if let Some(i) = s.lm().pure_power_var() {
                seen[i] = true;
            }
        }
        seen.into_iter().all(|b| b)
    }
}

/// Compute the reduced Gröbner basis of the ideal generated by `gens` in
/// `ring`. An empty generator list gives the zero ideal.
pub fn buchberger<F: Field>(ring: &Arc<WeightedRing>, gens: &[Polynomial<F>], order: &MonomialOrder) -> GroebnerBasis<F> {
    for g in gens {
        assert_eq!(**g.ring(), **ring, "generator from a different ring");
    }
    let mut basis: Vec<Sparse<F>> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut unit = false;

    fn push<F: Field>(
        h: Sparse<F>,
        basis: &mut Vec<Sparse<F>>,
        pairs: &mut Vec<(usize, usize)>,
        pending: &mut HashSet<(usize, usize)>,
    ) {
        let k = basis.len();
        for i in 0..k {
            pairs.push((i, k));
            pending.insert((i, k));
        }
        basis.push(h);
    }

    for g in gens {
        let refs: Vec<&Sparse<F>> = basis.iter().collect();
        let mut s = reduce(&Sparse::from_poly(g, order), &refs, order);
        if s.is_zero() {
            continue;
        }
        s.make_monic();
        unit |= s.lm().is_one();
        push(s, &mut basis, &mut pairs, &mut pending);
    }

    while !unit && !pairs.is_empty() {
        // Normal selection strategy: smallest lcm first.
        let (best, _) = pairs
            .iter()
            .enumerate()
            .map(|(idx, &(i, j))| (idx, basis[i].lm().lcm(basis[j].lm())))
            .min_by(|a, b| order.cmp(&a.1, &b.1))
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        pending.remove(&(i, j));
        let (fi, fj) = (&basis[i], &basis[j]);
        if fi.lm().is_coprime(fj.lm()) {
            continue;
        }
        let lcm = fi.lm().lcm(fj.lm());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(fi, fj, order);
        let refs: Vec<&Sparse<F>> = basis.iter().collect();
        let mut h = reduce(&s, &refs, order);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        unit |= h.lm().is_one();
        push(h, &mut basis, &mut pairs, &mut pending);
    }

    let elements = if unit {
        vec![Sparse {
            terms: vec![(Monomial::one(ring.nvars()), F::one())],
        }]
    } else {
        interreduce(basis, order)
    };
    GroebnerBasis {
        ring: ring.clone(),
        order: order.clone(),
        elements,
        source: gens.to_vec(),
    }
}

fn interreduce<F: Field>(basis: Vec<Sparse<F>>, order: &MonomialOrder) -> Vec<Sparse<F>> {
    // Drop elements whose leading monomial is divisible by another's.
    let mut minimal: Vec<Sparse<F>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && h.lm().divides(g.lm()) && (h.lm() != g.lm() || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Sparse<F>> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g)
            .collect();
        let head = Sparse {
            terms: vec![minimal[i].terms[0].clone()],
        };
        let tail = Sparse {
            terms: minimal[i].terms[1..].to_vec(),
        };
        let mut reduced = head;
        reduced.terms.extend(reduce(&tail, &others, order).terms);
        reduced.make_monic();
        out.push(reduced);
    }
    out.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    out
}
