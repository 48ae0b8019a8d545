//! The acceptance criteria as runnable suites, each criterion reporting a
//! list of named checks.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::{chern_line_bundle_image, pn_closed_form_check};
use crate::error::{Error, Result};
use crate::exactalg::{int, Polynomial, QPoly, Rational, UniPoly, WeightedRing};
use crate::fundscheme::{default_fiber_values, zscheme_ideal, ZSchemeIdeal};
use crate::groebner::{buchberger, hilbert_series_of_basis, tpoly, HilbertSeries, MonomialOrder};
use crate::hessenberg::{analyze, hessenberg_ideal, hessenberg_poincare};
use crate::pushforward::{fiber_sum_oracle, jacobian_class, jacobian_nondivisibility, normalization_guard, Integrator};
use crate::regvariety::{flag_model_a, projective_space_model, Provenance, RegularModel};
use crate::rootsys::{all_hessenberg_spaces, peterson_omega, RootSystem, RootSystemA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Pn,
    Flag,
    Hessenberg,
    Pushforward,
    All,
}

impl Suite {
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Pn => &[1, 3, 6, 7],
            Suite::Flag => &[2, 3, 6],
            Suite::Hessenberg => &[4],
            Suite::Pushforward => &[5, 6, 8],
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8],
        }
    }

    fn admits(self, p: &Provenance) -> bool {
        match self {
            Suite::Pn => matches!(p, Provenance::ProjectiveSpace(_)),
            Suite::Flag => matches!(p, Provenance::FlagA(_)),
            _ => true,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pn" => Ok(Suite::Pn),
            "flag" => Ok(Suite::Flag),
            "hessenberg" => Ok(Suite::Hessenberg),
            "pushforward" => Ok(Suite::Pushforward),
            "all" => Ok(Suite::All),
            _ => Err(Error::Syntax {
                position: 0,
                message: format!("unknown suite `{s}`; expected pn, flag, hessenberg, pushforward or all"),
            }),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Pn => "pn",
            Suite::Flag => "flag",
            Suite::Hessenberg => "hessenberg",
            Suite::Pushforward => "pushforward",
            Suite::All => "all",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub pn_max: usize,
    pub flag_ranks: Vec<usize>,
    pub hessenberg_ranks: Vec<usize>,
    pub random_classes: usize,
    pub seed: u64,
    /// Scale the first generator of every push-forward model by this factor.
    pub perturbation: Option<Rational>,
    /// Keep wall-clock times in the report.
    pub record_timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            pn_max: 4,
            flag_ranks: vec![1, 2],
            hessenberg_ranks: vec![2, 3],
            random_classes: 20,
            seed: 2024,
            perturbation: None,
            record_timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result<T>(name: impl Into<String>, r: Result<T>, detail: impl FnOnce(&T) -> (bool, String)) -> Self {
        match r {
            Ok(v) => {
                let (passed, text) = detail(&v);
                Check::new(name, passed, text)
            }
            Err(e) => Check::new(name, false, format!("{}: {e}", e.code())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

pub fn criterion_title(id: u8) -> &'static str {
    match id {
        1 => "projective space presentations",
        2 => "flag varieties",
        3 => "regular sequence and reduced fibers",
        4 => "Hessenberg sweep",
        5 => "push-forward",
        6 => "Jacobian not divisible by v",
        7 => "line bundle congruences",
        8 => "property checks and normalization guard",
        _ => "unknown",
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> SuiteReport {
    let criteria: Vec<CriterionReport> = suite.criteria().iter().map(|&id| run_criterion(id, suite, config)).collect();
    SuiteReport {
        suite,
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}

pub fn run_criterion(id: u8, suite: Suite, config: &SuiteConfig) -> CriterionReport {
    let start = Instant::now();
    let checks = match id {
        1 => projective_presentations(config),
        2 => flag_varieties(config),
        3 => regular_sequences(suite, config),
        4 => hessenberg_sweep(config),
        5 => pushforward_checks(config),
        6 => nondivisibility(suite, config),
        7 => line_bundles(config),
        8 => properties(config),
        _ => vec![Check::new("criterion", false, format!("no criterion {id}"))],
    };
    CriterionReport {
        id,
        title: criterion_title(id),
        passed: !checks.is_empty() && checks.iter().all(|c| c.passed),
        checks,
        elapsed_ms: config.record_timing.then(|| start.elapsed().as_millis()),
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let elapsed = start.elapsed();
    Check::new(
        "runtime",
        elapsed < limit,
        format!("within {} s", limit.as_secs()),
    )
}

/// `(1 + t^2 + ... + t^{2n}) / (1 - t^2)`.
fn pn_series(n: usize) -> HilbertSeries {
    let mut num = vec![0; 2 * n + 1];
    for i in 0..=n {
        num[2 * i] = 1;
    }
    HilbertSeries::new(num, vec![2])
}

fn projective_presentations(config: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=config.pn_max {
        let start = Instant::now();
        out.push(Check::from_result(format!("pn:{n} closed form"), pn_closed_form_check(n), |c| {
            (c.series_agree && c.product_in_ideal, c.product.clone())
        }));
        let series = projective_space_model(n)
            .and_then(|m| zscheme_ideal(&m))
            .and_then(|z| z.hilbert_series_z().map(|(full, _)| full));
        out.push(Check::from_result(format!("pn:{n} series"), series, |s| {
            (s.same_series(&pn_series(n)), s.to_string())
        }));
        let mut t = within(start, Duration::from_secs(10));
        t.name = format!("pn:{n} runtime");
        out.push(t);
    }
    out
}

/// `∏_{α>0} (1 − t^{2(ht α + 1)}) / (1 − t^{2 ht α})`.
fn flag_series(rank: usize) -> Result<Vec<i64>> {
    let roots = RootSystemA::new(rank)?;
    let mut poly = vec![1];
    for r in roots.positive_roots() {
        poly = tpoly::mul(&poly, &tpoly::one_minus(2 * (r.height() + 1)));
    }
    for r in roots.positive_roots() {
        poly = tpoly::div_one_minus(&poly, 2 * r.height())
            .ok_or_else(|| Error::CheckFailed("the product formula is not a polynomial".into()))?;
    }
    Ok(poly)
}

fn flag_varieties(config: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for &l in &config.flag_ranks {
        let start = Instant::now();
        let z = flag_model_a(l).and_then(|m| zscheme_ideal(&m));
        let factorial: usize = (1..=l + 1).product();
        let degree = z.as_ref().map_err(Clone::clone).and_then(|z| z.flat_degree());
        out.push(Check::from_result(format!("flag:{l} flat degree"), degree, |d| {
            (*d == factorial, format!("{d}, expected {factorial}"))
        }));
        let series = z
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|z| z.hilbert_series_z())
            .and_then(|(_, ordinary)| Ok((ordinary, flag_series(l)?)));
        out.push(Check::from_result(format!("flag:{l} ordinary series"), series, |(s, expected)| {
            (s.same_series(&HilbertSeries::polynomial(expected.clone())), s.to_string())
        }));
        let limit = if l >= 3 { 120 } else { 60 };
        let mut t = within(start, Duration::from_secs(limit));
        t.name = format!("flag:{l} runtime");
        out.push(t);
    }
    out
}

pub fn builtin_models(config: &SuiteConfig, pn_max: usize) -> Vec<Result<RegularModel>> {
    let mut out: Vec<Result<RegularModel>> = (1..=pn_max).map(projective_space_model).collect();
    out.extend(config.flag_ranks.iter().map(|&l| flag_model_a(l)));
    out
}

fn label(m: &Result<RegularModel>) -> String {
    match m {
        Ok(m) => m.provenance().label(),
        Err(_) => "model".into(),
    }
}

fn regular_sequences(suite: Suite, config: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for m in builtin_models(config, config.pn_max) {
        if let Ok(model) = &m {
            if !suite.admits(model.provenance()) {
                continue;
            }
        }
        let name = label(&m);
        let z = m.and_then(|m| zscheme_ideal(&m));
        let Ok(z) = z else {
            out.push(Check::from_result(name, z.map(|_| ()), |_| (true, String::new())));
            continue;
        };
        let model = z.model();
        let degrees_ok = model
            .generators()
            .iter()
            .zip(model.weights())
            .all(|(g, &a)| g.weighted_degree().value() == Some(a + 2));
        out.push(Check::new(format!("{name} generator degrees"), degrees_ok, ""));
        out.push(Check::from_result(format!("{name} regular sequence"), z.certify_regular_sequence(), |c| {
            (c.regular, c.actual.to_string())
        }));
        let rank = z.flat_degree();
        for v0 in default_fiber_values() {
            let fiber = z.fiber(&v0);
            let r = rank.clone();
            out.push(Check::from_result(format!("{name} fiber v={v0}"), fiber, |f| {
                let ok = r.as_ref().is_ok_and(|r| *r == f.dimension) && f.reduced && f.trace_form_determinant != int(0);
                (ok, format!("dimension {}, discriminant {}", f.dimension, f.trace_form_determinant))
            }));
        }
    }
    out
}

fn hessenberg_sweep(config: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for &rank in &config.hessenberg_ranks {
        let spaces = match all_hessenberg_spaces(rank) {
            Ok(s) => s,
            Err(e) => {
                out.push(Check::new(format!("A{rank} spaces"), false, e.to_string()));
                continue;
            }
        };
        if rank == 2 {
            out.push(Check::new("A2 space count", spaces.len() == 5, spaces.len().to_string()));
        }
        for space in &spaces {
            let name = format!("A{rank} {}", space.describe());
            out.push(Check::from_result(name, analyze(space), |r| {
                let ok = r.complete_intersection.passed && r.duality.passed;
                (ok, format!("{} with {} fixed points", r.poincare.series, r.poincare.fixed_points))
            }));
        }
        let peterson = peterson_omega(rank)
            .and_then(|s| hessenberg_ideal(&s))
            .and_then(|h| Ok((hessenberg_poincare(&h)?, crate::hessenberg::complete_intersection_check(&h)?)));
        out.push(Check::from_result(format!("A{rank} Peterson"), peterson, |(p, ci)| {
            let expected = (0..rank).fold(vec![1], |acc, _| tpoly::mul(&acc, &[1, 0, 1]));
            let mut ok = p.poincare == expected && p.fixed_points == 1 << rank;
            if rank == 2 {
                ok &= ci.degrees == [4, 4, 4];
            }
            (ok, format!("{}, degrees {:?}", p.series, ci.degrees))
        }));
    }
    out
}

fn pushforward_models(config: &SuiteConfig) -> Vec<Result<ZSchemeIdeal>> {
    let mut models: Vec<Result<RegularModel>> = (1..=3).map(projective_space_model).collect();
    models.extend(config.flag_ranks.iter().filter(|&&l| l <= 2).map(|&l| flag_model_a(l)));
    models
        .into_iter()
        .map(|m| {
            let m = m?;
            let m = match &config.perturbation {
                Some(c) => m.with_scaled_generator(0, c),
                None => m,
            };
            zscheme_ideal(&m)
        })
        .collect()
}

/// A random homogeneous class of degree `degree` with small integer
/// coefficients.
pub fn random_class(ring: &Arc<WeightedRing>, degree: u32, rng: &mut impl Rng) -> QPoly {
    let terms = ring
        .monomials_of_degree(degree)
        .into_iter()
        .map(|m| (m, int(rng.gen_range(-3..=3))));
    Polynomial::from_terms(ring, terms)
}

fn eval(p: &UniPoly<Rational>, v0: &Rational) -> Rational {
    p.eval(v0)
}

fn pushforward_checks(config: &SuiteConfig) -> Vec<Check> {
    let start = Instant::now();
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for z in pushforward_models(config) {
        let z = match z {
            Ok(z) => z,
            Err(e) => {
                out.push(Check::new("model", false, format!("{}: {e}", e.code())));
                continue;
            }
        };
        let name = z.model().provenance().label();
        let integrator = match Integrator::new(&z) {
            Ok(i) => i,
            Err(e) => {
                out.push(Check::new(format!("{name} integrator"), false, format!("{}: {e}", e.code())));
                continue;
            }
        };
        let one = Polynomial::one(z.ring());
        out.push(Check::from_result(format!("{name} integral of 1"), integrator.integrate(&one), |r| {
            (r.value.0.is_zero(), r.value.to_string())
        }));
        let r = integrator.rank();
        let j = integrator.jacobian().clone();
        out.push(Check::from_result(format!("{name} integral of J"), integrator.integrate(&j), |v| {
            (v.value.0 == UniPoly::constant(int(r as i64)), format!("{}, rank {r}", v.value))
        }));
        let top = 2 * z.nvars() as u32;
        let mut failures = Vec::new();
        for k in 0..config.random_classes {
            let degree = 2 * rng.gen_range(0..=(top / 2 + 2));
            let f = random_class(z.ring(), degree, &mut rng);
            match integrator.integrate(&f) {
                Ok(res) => {
                    if !res.degree_contract {
                        failures.push(format!("class {k} ({f}) breaks the degree contract: {}", res.value));
                    }
                    for v0 in [int(1), int(2)] {
                        match fiber_sum_oracle(&z, &f, &v0) {
                            Ok(x) if x == eval(&res.value.0, &v0) => {}
                            Ok(x) => failures.push(format!("class {k} ({f}) at v={v0}: oracle {x}, trace {}", res.value)),
                            Err(e) => failures.push(format!("class {k} at v={v0}: {}", e.code())),
                        }
                    }
                }
                Err(e) => failures.push(format!("class {k} ({f}): {}", e.code())),
            }
        }
        out.push(Check::new(
            format!("{name} random classes"),
            failures.is_empty(),
            if failures.is_empty() {
                format!("{} classes agree with the fiber sums", config.random_classes)
            } else {
                failures.join("; ")
            },
        ));
    }
    out.push(within(start, Duration::from_secs(120)));
    out
}

fn nondivisibility(suite: Suite, config: &SuiteConfig) -> Vec<Check> {
    let mut models: Vec<Result<RegularModel>> = Vec::new();
    if suite.admits(&Provenance::ProjectiveSpace(1)) {
        models.extend((1..=3).map(projective_space_model));
    }
    if suite.admits(&Provenance::FlagA(2)) && config.flag_ranks.contains(&2) {
        models.push(flag_model_a(2));
    }
    models
        .into_iter()
        .map(|m| {
            let name = label(&m);
            let cert = m.and_then(|m| zscheme_ideal(&m)).and_then(|z| jacobian_nondivisibility(&z));
            Check::from_result(name, cert, |c| (true, c.normal_form.clone()))
        })
        .collect()
}

fn line_bundles(config: &SuiteConfig) -> Vec<Check> {
    (1..=config.pn_max.min(3))
        .map(|n| {
            Check::from_result(format!("pn:{n}"), chern_line_bundle_image(n), |c| {
                (c.congruences.iter().all(|r| r == "0"), c.chern_image.clone())
            })
        })
        .collect()
}

fn properties(config: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(1));
    for z in pushforward_models(config) {
        let z = match z {
            Ok(z) => z,
            Err(e) => {
                out.push(Check::new("model", false, format!("{}: {e}", e.code())));
                continue;
            }
        };
        let name = z.model().provenance().label();
        let ring = z.ring();

        let a = random_class(ring, 2, &mut rng);
        let b = random_class(ring, 4, &mut rng);
        let c = random_class(ring, 2, &mut rng);
        let axioms = a.add(&b) == b.add(&a)
            && a.mul(&b) == b.mul(&a)
            && a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c))
            && a.mul(&b).mul(&c) == a.mul(&b.mul(&c))
            && a.sub(&a).is_zero();
        out.push(Check::new(format!("{name} ring axioms"), axioms, ""));

        out.push(Check::new(format!("{name} S-pair replay"), z.groebner().verify_s_pairs(), ""));

        let grevlex = hilbert_series_of_basis(z.groebner());
        let lex = hilbert_series_of_basis(&buchberger(ring, z.generators(), &MonomialOrder::lex(ring)));
        out.push(Check::new(
            format!("{name} series order invariance"),
            grevlex.same_series(&lex),
            format!("{grevlex} and {lex}"),
        ));

        if let Provenance::ProjectiveSpace(n) = *z.model().provenance() {
            let mut multiplicative = true;
            for m in 0..=n {
                let restrict = |f: &QPoly| z.component_restriction(f, m);
                match (restrict(&a), restrict(&b), restrict(&a.mul(&b))) {
                    (Ok(ra), Ok(rb), Ok(rab)) => multiplicative &= ra.mul(&rb) == rab,
                    _ => multiplicative = false,
                }
            }
            out.push(Check::new(format!("{name} restriction is multiplicative"), multiplicative, ""));
        }

        out.push(Check::from_result(format!("{name} normalization guard"), normalization_guard(&z), |g| {
            (g.passed, format!("∫J_ref = {}, rank {}", g.reference_integral, g.rank))
        }));

        let scaled = zscheme_ideal(&z.model().with_scaled_generator(0, &int(3)))
            .and_then(|s| normalization_guard(&s));
        out.push(Check::from_result(format!("{name} guard catches scaling by 3"), scaled, |g| {
            let r = Rational::new((g.rank as i64).into(), 3.into());
            (!g.passed && g.reference_integral == r, format!("∫J_ref = {}", g.reference_integral))
        }));

        let j = jacobian_class(&z).map(|j| j.jacobian);
        out.push(Check::from_result(format!("{name} Jacobian degree"), j, |j| {
            (j.weighted_degree().value() == Some(2 * z.nvars() as u32), String::new())
        }));
    }
    out
}
