//! Type-A root systems, the Weyl group action and Hessenberg spaces.
//!
//! Roots are stored by their coefficients over the simple roots. In type
//! `A_l` the root `ε_a − ε_b` (1-based, `a ≠ b`) is positive when `a < b`;
//! the negative root `ε_a − ε_b` with `a > b` labels the matrix entry `(a, b)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A root as integer coefficients over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root(Vec<i32>);

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Root(coeffs)
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.neg().is_positive()
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Sum of the coefficients, up to sign.
    pub fn height(&self) -> u32 {
        self.0.iter().sum::<i32>().unsigned_abs()
    }

    /// The pair `(a, b)` with `self = ε_a − ε_b`, 1-based, if `self` is a
    /// type-A root.
    pub fn epsilon_pair(&self) -> Option<(usize, usize)> {
        let support: Vec<usize> = (0..self.0.len()).filter(|&k| self.0[k] != 0).collect();
        let (&lo, &hi) = (support.first()?, support.last()?);
        let sign = self.0[lo];
        if sign.abs() != 1 || hi - lo + 1 != support.len() || support.iter().any(|&k| self.0[k] != sign) {
            return None;
        }
        // Σ_{k=lo}^{hi} α_k = ε_{lo+1} − ε_{hi+2}
        if sign > 0 {
            Some((lo + 1, hi + 2))
        } else {
            Some((hi + 2, lo + 1))
        }
    }

    /// The root `ε_a − ε_b` in rank `rank`.
    pub fn from_epsilon_pair(rank: usize, a: usize, b: usize) -> Root {
        assert!(a != b && a >= 1 && b >= 1 && a <= rank + 1 && b <= rank + 1);
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        let mut c = vec![0; rank];
        for k in lo - 1..hi - 1 {
            c[k] = sign;
        }
        Root(c)
    }

    pub fn simple(rank: usize, j: usize) -> Root {
        let mut c = vec![0; rank];
        c[j] = 1;
        Root(c)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            write!(f, "{sign}{mag}a{}", k + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for Root {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Root-system data consumed by the Hessenberg machinery.
pub trait RootSystem {
    fn rank(&self) -> usize;
    fn positive_roots(&self) -> &[Root];
    fn is_root(&self, r: &Root) -> bool {
        self.positive_roots().contains(r) || self.positive_roots().contains(&r.neg())
    }
    fn negative_roots(&self) -> Vec<Root> {
        self.positive_roots().iter().map(Root::neg).collect()
    }
    fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank()).map(|j| Root::simple(self.rank(), j)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemA {
    rank: usize,
    positive: Vec<Root>,
}

impl RootSystemA {
    /// Positive roots ordered by height, then by their first simple root.
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidModel("root system rank must be at least 1".into()));
        }
        let mut positive = Vec::new();
        for len in 1..=rank {
            for lo in 0..=rank - len {
                let mut c = vec![0; rank];
                for k in lo..lo + len {
                    c[k] = 1;
                }
                positive.push(Root(c));
            }
        }
        Ok(RootSystemA { rank, positive })
    }

    pub fn highest_root(&self) -> Root {
        Root(vec![1; self.rank])
    }

    /// All `(rank + 1)!` Weyl group elements in lexicographic order.
    pub fn weyl_group(&self) -> Vec<WeylElement> {
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..=self.rank).collect();
        loop {
            out.push(WeylElement(perm.clone()));
            // next permutation
            let Some(i) = (0..perm.len() - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..perm.len()).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        out
    }

    pub fn parse_root(&self, text: &str) -> Result<Root> {
        parse_root(text, self.rank)
    }
}

impl RootSystem for RootSystemA {
    fn rank(&self) -> usize {
        self.rank
    }

    fn positive_roots(&self) -> &[Root] {
        &self.positive
    }
}

/// A permutation `σ` of `{0..rank}` acting by `ε_i ↦ ε_{σ(i)}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement(Vec<usize>);

impl WeylElement {
    pub fn from_permutation(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidModel(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(WeylElement(perm))
    }

    pub fn identity(rank: usize) -> Self {
        WeylElement((0..=rank).collect())
    }

    /// The simple reflection `s_j` (0-based `j`).
    pub fn simple_reflection(rank: usize, j: usize) -> Self {
        let mut p: Vec<usize> = (0..=rank).collect();
        p.swap(j, j + 1);
        WeylElement(p)
    }

    pub fn longest(rank: usize) -> Self {
        WeylElement((0..=rank).rev().collect())
    }

    pub fn permutation(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        WeylElement(inv)
    }

    /// `(self ∘ other)(i) = self(other(i))`
    pub fn compose(&self, other: &WeylElement) -> Self {
        WeylElement(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn act(&self, root: &Root) -> Result<Root> {
        let rank = self.0.len() - 1;
        if root.rank() != rank {
            return Err(Error::NotARoot(root.to_string()));
        }
        let (a, b) = root.epsilon_pair().ok_or_else(|| Error::NotARoot(root.to_string()))?;
        Ok(Root::from_epsilon_pair(rank, self.0[a - 1] + 1, self.0[b - 1] + 1))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images: Vec<String> = self.0.iter().map(|p| (p + 1).to_string()).collect();
        write!(f, "[{}]", images.join(","))
    }
}

impl Serialize for WeylElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A set of negative roots encoding a Hessenberg space `b ⊕ ⊕ g_α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HessenbergSpace {
    rank: usize,
    omega: BTreeSet<Root>,
}

/// The first failure of the closure property: `root + simple` is a negative
/// root missing from the space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureViolation {
    pub root: Root,
    pub simple: Root,
    pub missing: Root,
}

impl fmt::Display for ClosureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({}) = {} is not in the space", self.root, self.simple, self.missing)
    }
}

impl HessenbergSpace {
    /// Collect `omega`; every entry must be a negative root of rank `rank`.
    pub fn new(rank: usize, omega: impl IntoIterator<Item = Root>) -> Result<Self> {
        let sys = RootSystemA::new(rank)?;
        let omega: BTreeSet<Root> = omega.into_iter().collect();
        for r in &omega {
            if r.rank() != rank || !sys.is_root(r) {
                return Err(Error::NotARoot(r.to_string()));
            }
            if !r.is_negative() {
                return Err(Error::InvalidHessenberg(format!("{r} is not a negative root")));
            }
        }
        Ok(HessenbergSpace { rank, omega })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn omega(&self) -> &BTreeSet<Root> {
        &self.omega
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.omega.contains(r)
    }

    /// All of `Φ⁻` (the flag variety itself).
    pub fn full(rank: usize) -> Result<Self> {
        Self::new(rank, RootSystemA::new(rank)?.negative_roots())
    }

    /// The empty space (`M = b`).
    pub fn empty(rank: usize) -> Result<Self> {
        Self::new(rank, [])
    }

    /// Negative roots of height at least 2.
    pub fn from_height_condition(rank: usize) -> Result<Self> {
        let sys = RootSystemA::new(rank)?;
        Self::new(rank, sys.negative_roots().into_iter().filter(|r| r.height() >= 2))
    }

    /// Negative roots not in the space.
    pub fn complement(&self) -> Vec<Root> {
        RootSystemA::new(self.rank)
            .expect("rank validated at construction")
            .negative_roots()
            .into_iter()
            .filter(|r| !self.omega.contains(r))
            .collect()
    }

    /// Parse a comma-separated root list or a keyword
    /// (`peterson`, `full`, `none`).
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        match text.trim() {
            "peterson" => return peterson_omega(rank),
            "full" => return Self::full(rank),
            "none" | "empty" | "" => return Self::empty(rank),
            _ => {}
        }
        let roots = text
            .split(',')
            .map(|s| parse_root(s, rank))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rank, roots)
    }

    pub fn describe(&self) -> String {
        if self.omega.is_empty() {
            return "{}".into();
        }
        let items: Vec<String> = self.omega.iter().map(Root::to_string).collect();
        format!("{{{}}}", items.join(", "))
    }
}

/// Parse `a1+a2`, `-a1`, `-a1-a2`, `-(a1+a2)` into a root of rank `rank`.
pub fn parse_root(text: &str, rank: usize) -> Result<Root> {
    let bad = || Error::NotARoot(text.trim().to_string());
    let mut s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut outer = 1;
    if let Some(inner) = s.strip_prefix("-(").and_then(|r| r.strip_suffix(')')) {
        outer = -1;
        s = inner.to_string();
    }
    let mut coeffs = vec![0i32; rank];
    let mut rest = s.as_str();
    if rest.is_empty() {
        return Err(bad());
    }
    while !rest.is_empty() {
        let sign = match rest.as_bytes()[0] {
            b'-' => {
                rest = &rest[1..];
                -1
            }
            b'+' => {
                rest = &rest[1..];
                1
            }
            _ => 1,
        };
        let body = rest.strip_prefix('a').or_else(|| rest.strip_prefix('α')).ok_or_else(bad)?;
        let digits = body.chars().take_while(char::is_ascii_digit).count();
        let k: usize = body[..digits].parse().map_err(|_| bad())?;
        if k == 0 || k > rank {
            return Err(bad());
        }
        coeffs[k - 1] += sign * outer;
        rest = &body[digits..];
    }
    let r = Root(coeffs);
    if r.epsilon_pair().is_none() {
        return Err(bad());
    }
    Ok(r)
}

pub fn build_type_a(rank: usize) -> Result<RootSystemA> {
    RootSystemA::new(rank)
}

pub fn act(w: &WeylElement, root: &Root) -> Result<Root> {
    w.act(root)
}

/// Check the closure property; returns the first violation in the order of
/// the stored roots, then the simple roots.
pub fn validate_hessenberg(h: &HessenbergSpace) -> std::result::Result<(), ClosureViolation> {
    let sys = RootSystemA::new(h.rank).expect("rank validated at construction");
    for alpha in &h.omega {
        for simple in sys.simple_roots() {
            let sum = alpha.add(&simple);
            if sum.is_negative() && sys.is_root(&sum) && !h.omega.contains(&sum) {
                return Err(ClosureViolation {
                    root: alpha.clone(),
                    simple,
                    missing: sum,
                });
            }
        }
    }
    Ok(())
}

/// Validate, converting a violation into an error.
pub fn require_valid(h: &HessenbergSpace) -> Result<()> {
    validate_hessenberg(h).map_err(|v| Error::InvalidHessenberg(v.to_string()))
}

/// The negative simple roots.
pub fn peterson_omega(rank: usize) -> Result<HessenbergSpace> {
    let sys = RootSystemA::new(rank)?;
    HessenbergSpace::new(rank, sys.simple_roots().iter().map(Root::neg))
}

/// Every valid Hessenberg space of the given rank, by exhaustive search.
pub fn all_hessenberg_spaces(rank: usize) -> Result<Vec<HessenbergSpace>> {
    let neg = RootSystemA::new(rank)?.negative_roots();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << neg.len()) {
        let omega = (0..neg.len()).filter(|k| mask >> k & 1 == 1).map(|k| neg[k].clone());
        let h = HessenbergSpace::new(rank, omega)?;
        if validate_hessenberg(&h).is_ok() {
            out.push(h);
        }
    }
    Ok(out)
}

/// Weyl elements `w` with `w⁻¹(α_j) ∈ Ω ∪ Φ⁺` for every simple root.
pub fn hessenberg_fixed_points(h: &HessenbergSpace) -> Result<Vec<WeylElement>> {
    require_valid(h)?;
    let sys = RootSystemA::new(h.rank)?;
    let simples = sys.simple_roots();
    let mut out = Vec::new();
    for w in sys.weyl_group() {
        let winv = w.inverse();
        let mut ok = true;
        for s in &simples {
            let image = winv.act(s)?;
            if !(image.is_positive() || h.contains(&image)) {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(w);
        }
    }
    Ok(out)
}
