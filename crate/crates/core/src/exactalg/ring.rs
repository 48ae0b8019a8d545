//! Weighted polynomial rings and monomials.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Name of the distinguished degree-2 parameter variable.
pub const V: &str = "v";

/// A polynomial ring ℚ[x₁,…,xₙ] (optionally with `v`) graded by positive even
/// weights. The coefficient field is carried by the polynomial type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedRing {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl WeightedRing {
    pub fn new<S: AsRef<str>>(names: &[S], weights: &[u32]) -> Result<Arc<Self>> {
        if names.len() != weights.len() {
            return Err(Error::InvalidRing(format!(
                "{} names but {} weights",
                names.len(),
                weights.len()
            )));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidRing(format!("`{name}` is not an identifier")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidRing(format!("duplicate variable `{name}`")));
            }
            let w = weights[i];
            if w == 0 || !w.is_multiple_of(2) {
                return Err(Error::InvalidRing(format!(
                    "weight of `{name}` must be positive and even, got {w}"
                )));
            }
            if name == V && w != 2 {
                return Err(Error::InvalidRing("the variable `v` must have weight 2".into()));
            }
        }
        Ok(Arc::new(WeightedRing {
            names,
            weights: weights.to_vec(),
        }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn v_index(&self) -> Option<usize> {
        self.index_of(V)
    }

    pub fn has_v(&self) -> bool {
        self.v_index().is_some()
    }

    /// The ring with `v` (weight 2) appended; unchanged if `v` is present.
    pub fn with_v(&self) -> Arc<Self> {
        if self.has_v() {
            return Arc::new(self.clone());
        }
        let mut r = self.clone();
        r.names.push(V.to_string());
        r.weights.push(2);
        Arc::new(r)
    }

    /// The ring with `v` removed.
    pub fn without_v(&self) -> Arc<Self> {
        let mut r = self.clone();
        if let Some(i) = self.v_index() {
            r.names.remove(i);
            r.weights.remove(i);
        }
        Arc::new(r)
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u32 {
        m.exps()
            .iter()
            .zip(&self.weights)
            .map(|(e, w)| e * w)
            .sum()
    }

    /// All monomials of weighted degree `d`, in lexicographic exponent order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        fn walk(i: usize, left: u32, w: &[u32], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == w.len() {
                if left == 0 {
                    out.push(Monomial(exps.clone()));
                }
                return;
            }
            for e in 0..=left / w[i] {
                exps[i] = e;
                walk(i + 1, left - e * w[i], w, exps, out);
            }
            exps[i] = 0;
        }
        let mut out = Vec::new();
        walk(0, d, &self.weights, &mut vec![0; self.weights.len()], &mut out);
        out
    }

    pub fn describe(&self) -> String {
        let vars: Vec<String> = self
            .names
            .iter()
            .zip(&self.weights)
            .map(|(n, w)| format!("{n}:{w}"))
            .collect();
        format!("Q[{}]", vars.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector aligned with a ring's variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The single variable this monomial is a pure power of, if any.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }

    pub fn render(&self, ring: &WeightedRing) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    ring.name(i).to_string()
                } else {
                    format!("{}^{}", ring.name(i), e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}
