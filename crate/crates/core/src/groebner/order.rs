use std::cmp::Ordering;

use crate::exactalg::{Monomial, WeightedRing};

/// Coordinates in reverse ring order, then `v`.
pub fn default_priority(ring: &WeightedRing) -> Vec<usize> {
    let v = ring.v_index();
    let mut p: Vec<usize> = (0..ring.nvars()).rev().filter(|&i| Some(i) != v).collect();
    p.extend(v);
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    /// Weighted degree first, then reverse lexicographic on the priority list
    /// (the last variable in priority is the cheapest).
    WeightedGrevlex,
    Lex,
}

/// A monomial order on a fixed ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    weights: Vec<u32>,
}

impl MonomialOrder {
    /// Weighted grevlex with the default priority: later coordinates are
    /// more significant and `v` is least significant.
    pub fn weighted_grevlex(ring: &WeightedRing) -> Self {
        Self::new(OrderKind::WeightedGrevlex, ring, default_priority(ring))
    }

    pub fn lex(ring: &WeightedRing) -> Self {
        Self::new(OrderKind::Lex, ring, (0..ring.nvars()).collect())
    }

    /// `priority` lists variable indices from most to least significant.
    pub fn new(kind: OrderKind, ring: &WeightedRing, priority: Vec<usize>) -> Self {
        let mut sorted = priority.clone();
        sorted.sort_unstable();
        assert!(
            sorted == (0..ring.nvars()).collect::<Vec<_>>(),
            "priority must be a permutation of the ring's variables"
        );
        MonomialOrder {
            kind,
            priority,
            weights: ring.weights().to_vec(),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        m.exps().iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.priority {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::WeightedGrevlex => self.degree(a).cmp(&self.degree(b)).then_with(|| {
                for &i in self.priority.iter().rev() {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_prefers_small_last_exponent() {
        let r = WeightedRing::new(&["x1", "v"], &[2, 2]).unwrap();
        let o = MonomialOrder::weighted_grevlex(&r);
        let x1sq = Monomial::new(vec![2, 0]);
        let x1v = Monomial::new(vec![1, 1]);
        assert_eq!(o.cmp(&x1sq, &x1v), Ordering::Greater);
    }

    #[test]
    fn weights_dominate() {
        let r = WeightedRing::new(&["x1", "x2"], &[2, 4]).unwrap();
        let o = MonomialOrder::weighted_grevlex(&r);
        // x2 (degree 4) vs x1 (degree 2)
        assert_eq!(o.cmp(&Monomial::new(vec![0, 1]), &Monomial::new(vec![1, 0])), Ordering::Greater);
        let lex = MonomialOrder::lex(&r);
        // equal degree: x2 leads x1^2
        assert_eq!(o.cmp(&Monomial::new(vec![0, 1]), &Monomial::new(vec![2, 0])), Ordering::Greater);
        assert_eq!(lex.cmp(&Monomial::new(vec![0, 5]), &Monomial::new(vec![1, 0])), Ordering::Less);
    }
}
