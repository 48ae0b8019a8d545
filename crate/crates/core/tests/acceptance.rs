//! Acceptance criteria 1-8, checked with exact arithmetic against oracles
//! computed here. Prints one PASS/FAIL line per criterion.

use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zscheme::cohomology::{chern_line_bundle_image, pn_closed_form_check};
use zscheme::exactalg::{int, Polynomial, QPoly, Rational, UniPoly, V};
use zscheme::fundscheme::{zscheme_ideal, ZSchemeIdeal};
use zscheme::groebner::{buchberger, grevlex_basis, hilbert_series_of_basis, MonomialOrder};
use zscheme::hessenberg::{
    complete_intersection_check, hessenberg_ideal, hessenberg_poincare, poincare_duality_check,
};
use zscheme::pushforward::{fiber_sum_oracle, jacobian_class, jacobian_nondivisibility, normalization_guard, Integrator};
use zscheme::regvariety::{flag_model_a, projective_space_model, RegularModel};
use zscheme::rootsys::{all_hessenberg_spaces, hessenberg_fixed_points, peterson_omega, HessenbergSpace};

type Outcome = std::result::Result<(), String>;
type Criterion = (u8, &'static str, fn() -> Outcome);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn pn(n: usize) -> ZSchemeIdeal {
    zscheme_ideal(&projective_space_model(n).unwrap()).unwrap()
}

fn flag(l: usize) -> ZSchemeIdeal {
    zscheme_ideal(&flag_model_a(l).unwrap()).unwrap()
}

/// Power series coefficients of `num / ∏ (1 - t^e)` up to `upto`.
fn expand(num: &[i64], denominators: &[u32], upto: usize) -> Vec<i64> {
    let mut s = vec![0i64; upto + 1];
    for (k, &c) in num.iter().enumerate().take(upto + 1) {
        s[k] = c;
    }
    for &e in denominators {
        for k in e as usize..=upto {
            s[k] += s[k - e as usize];
        }
    }
    s
}

/// `∏ (1 - q^{h+1}) / (1 - q^h)` over the given heights, as a truncated
/// power series in `q`.
fn height_product(heights: &[u32], upto: usize) -> Vec<i64> {
    let mut num = vec![1i64];
    for &h in heights {
        let mut next = vec![0i64; num.len() + h as usize + 1];
        for (k, &c) in num.iter().enumerate() {
            next[k] += c;
            next[k + h as usize + 1] -= c;
        }
        num = next;
    }
    expand(&num, heights, upto)
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn q_to_t(q: &[i64]) -> Vec<i64> {
    let mut t = vec![0; 2 * q.len() - 1];
    for (k, &c) in q.iter().enumerate() {
        t[2 * k] = c;
    }
    t
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Heights of the positive roots of `A_l`: `l + 1 - h` roots of height `h`.
fn type_a_heights(l: usize) -> Vec<u32> {
    (1..=l as u32).flat_map(|h| std::iter::repeat_n(h, l + 1 - h as usize)).collect()
}

fn random_class(z: &ZSchemeIdeal, degree: u32, rng: &mut ChaCha8Rng) -> QPoly {
    let ring = z.ring();
    let terms: Vec<_> = ring
        .monomials_of_degree(degree)
        .into_iter()
        .map(|m| (m, int(rng.gen_range(-4..=4))))
        .collect();
    Polynomial::from_terms(ring, terms)
}

fn criterion_1() -> Outcome {
    for n in 1..=4 {
        let start = Instant::now();
        let cert = pn_closed_form_check(n).map_err(|e| format!("pn:{n}: {e}"))?;
        ensure(cert.series_agree && cert.product_in_ideal, || format!("pn:{n} closed form"))?;
        let (full, _) = pn(n).hilbert_series_z().unwrap();
        let upto = 4 * n + 6;
        let computed = expand(full.numerator(), full.denominator_weights(), upto);
        // (Σ_{i ≤ n} t^{2i}) / (1 - t^2): coefficient min(k, n) + 1 at t^{2k}
        let expected: Vec<i64> = (0..=upto)
            .map(|d| if d % 2 == 1 { 0 } else { (d / 2).min(n) as i64 + 1 })
            .collect();
        ensure(computed == expected, || format!("pn:{n} series {full}"))?;
        ensure(start.elapsed() < Duration::from_secs(10), || format!("pn:{n} took {:?}", start.elapsed()))?;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    for l in 1..=3 {
        let start = Instant::now();
        let z = flag(l);
        let r = z.flat_degree().map_err(|e| e.to_string())?;
        ensure(r == factorial(l + 1), || format!("flag:{l} flat degree {r}"))?;
        let (_, ordinary) = z.hilbert_series_z().unwrap();
        let dim = l * (l + 1) / 2;
        let upto = 2 * dim + 8;
        let computed = expand(ordinary.numerator(), ordinary.denominator_weights(), upto);
        let heights: Vec<u32> = type_a_heights(l);
        let doubled: Vec<u32> = heights.iter().map(|h| 2 * h).collect();
        // ∏ (1 - t^{2(h+1)}) / (1 - t^{2h}) as a series in t
        let q = height_product(&heights, upto / 2);
        let expected: Vec<i64> = (0..=upto).map(|d| if d % 2 == 1 { 0 } else { q[d / 2] }).collect();
        ensure(computed == expected, || format!("flag:{l} series {ordinary}, heights {doubled:?}"))?;
        let limit = if l == 3 { 120 } else { 30 };
        ensure(start.elapsed() < Duration::from_secs(limit), || format!("flag:{l} took {:?}", start.elapsed()))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let models: Vec<RegularModel> = (1..=4)
        .map(|n| projective_space_model(n).unwrap())
        .chain((1..=3).map(|l| flag_model_a(l).unwrap()))
        .collect();
    for model in models {
        let name = model.provenance().label();
        for (g, &a) in model.generators().iter().zip(model.weights()) {
            ensure(g.weighted_degree().value() == Some(a + 2), || format!("{name}: generator {g}"))?;
        }
        let z = zscheme_ideal(&model).unwrap();
        let cert = z.certify_regular_sequence().map_err(|e| e.to_string())?;
        ensure(cert.regular, || format!("{name}: not a regular sequence"))?;
        let r = z.flat_degree().unwrap();
        // a regular sequence of degrees a_i + 2 has rank ∏ (a_i + 2) / a_i
        let expected = model
            .weights()
            .iter()
            .fold(int(1), |acc, &a| acc * Rational::new((a + 2).into(), a.into()));
        ensure(int(r as i64) == expected, || format!("{name}: rank {r}, expected {expected}"))?;
        for v0 in [int(1), int(2), int(-1)] {
            let fiber = z.fiber(&v0).map_err(|e| e.to_string())?;
            ensure(fiber.dimension == r, || format!("{name} at v={v0}: dimension {}", fiber.dimension))?;
            ensure(fiber.trace_form_determinant != int(0), || format!("{name} at v={v0}: degenerate trace form"))?;
            ensure(fiber.reduced, || format!("{name} at v={v0}: not reduced"))?;
        }
    }
    Ok(())
}

fn check_space(space: &HessenbergSpace) -> Outcome {
    let name = space.describe();
    let h = hessenberg_ideal(space).map_err(|e| format!("{name}: {e}"))?;
    let p = hessenberg_poincare(&h).map_err(|e| format!("{name}: {e}"))?;
    let heights: Vec<u32> = space.omega().iter().map(|r| r.height()).collect();
    let q = trim(height_product(&heights, 20));
    ensure(q.len() < 20 && q.iter().all(|&c| c >= 0), || format!("{name}: product formula not a polynomial"))?;
    ensure(p.poincare == q_to_t(&q), || format!("{name}: {:?} against {:?}", p.poincare, q_to_t(&q)))?;
    let euler: i64 = p.poincare.iter().sum();
    let fixed = hessenberg_fixed_points(space).unwrap().len();
    ensure(euler == fixed as i64, || format!("{name}: euler {euler}, {fixed} fixed points"))?;
    let ci = complete_intersection_check(&h).map_err(|e| e.to_string())?;
    ensure(ci.passed, || format!("{name}: not a complete intersection ({:?})", ci.remainder))?;
    let duality = poincare_duality_check(&h).map_err(|e| e.to_string())?;
    ensure(duality.passed, || format!("{name}: duality fails"))?;
    Ok(())
}

fn criterion_4() -> Outcome {
    let a2 = all_hessenberg_spaces(2).unwrap();
    ensure(a2.len() == 5, || format!("{} spaces over A2", a2.len()))?;
    let a3 = all_hessenberg_spaces(3).unwrap();
    ensure(a3.len() == 14, || format!("{} spaces over A3", a3.len()))?;
    for space in a2.iter().chain(&a3) {
        check_space(space)?;
    }
    for l in [2usize, 3] {
        let space = peterson_omega(l).unwrap();
        let h = hessenberg_ideal(&space).unwrap();
        let p = hessenberg_poincare(&h).unwrap();
        // (1 + t^2)^l
        let binomial: Vec<i64> = (0..=2 * l)
            .map(|d| if d % 2 == 1 { 0 } else { (0..d / 2).fold(1, |acc, i| acc * (l - i) as i64 / (i as i64 + 1)) })
            .collect();
        ensure(p.poincare == binomial, || format!("Peterson A{l}: {:?}", p.poincare))?;
        ensure(p.fixed_points == 1 << l, || format!("Peterson A{l}: {} fixed points", p.fixed_points))?;
        if l == 2 {
            let ci = complete_intersection_check(&h).unwrap();
            ensure(ci.degrees == [4, 4, 4], || format!("Peterson A2 degrees {:?}", ci.degrees))?;
        }
    }
    Ok(())
}

/// `value` is zero, or `c v^k` with `2k = degree - 2n`.
fn degree_contract(value: &UniPoly<Rational>, degree: u32, n: usize) -> bool {
    if value.is_zero() {
        return true;
    }
    let nonzero: Vec<usize> = (0..value.coeffs().len()).filter(|&k| value.coeff(k) != int(0)).collect();
    nonzero.len() == 1 && 2 * nonzero[0] as i64 == degree as i64 - 2 * n as i64
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let models: Vec<ZSchemeIdeal> = (1..=3).map(pn).chain((1..=2).map(flag)).collect();
    for z in &models {
        let name = z.model().provenance().label();
        let integrator = Integrator::new(z).map_err(|e| format!("{name}: {e}"))?;
        let r = z.flat_degree().unwrap();
        let one = Polynomial::one(z.ring());
        let int_one = integrator.integrate(&one).map_err(|e| e.to_string())?.value.0;
        ensure(int_one.is_zero(), || format!("{name}: ∫1 = {int_one:?}"))?;
        let j = jacobian_class(z).unwrap().jacobian;
        let int_j = integrator.integrate(&j).map_err(|e| e.to_string())?.value.0;
        ensure(int_j == UniPoly::constant(int(r as i64)), || format!("{name}: ∫J ≠ {r}"))?;
        let n = z.nvars();
        for k in 0..20 {
            let degree = 2 * rng.gen_range(0..=n as u32 + 2);
            let f = random_class(z, degree, &mut rng);
            let value = integrator
                .integrate(&f)
                .map_err(|e| format!("{name} class {k} ({f}): {}", e.code()))?
                .value
                .0;
            ensure(degree_contract(&value, degree, n), || format!("{name} class {k} ({f}): {value:?}"))?;
            for v0 in [int(1), int(2)] {
                let oracle = fiber_sum_oracle(z, &f, &v0).map_err(|e| format!("{name} class {k}: {e}"))?;
                ensure(oracle == value.eval(&v0), || {
                    format!("{name} class {k} ({f}) at v={v0}: oracle {oracle}, trace {}", value.eval(&v0))
                })?;
            }
        }
    }
    ensure(start.elapsed() < Duration::from_secs(120), || format!("took {:?}", start.elapsed()))
}

fn criterion_6() -> Outcome {
    for z in (1..=3).map(pn).chain([flag(2)]) {
        let name = z.model().provenance().label();
        jacobian_nondivisibility(&z).map_err(|e| format!("{name}: {e}"))?;
        // independent: reduce J at v = 0 modulo a fresh basis of I(Z) + (v)
        let j = jacobian_class(&z).unwrap().jacobian;
        let mut gens = z.generators().to_vec();
        gens.push(Polynomial::named(z.ring(), V));
        let gb = grevlex_basis(z.ring(), &gens);
        ensure(!gb.normal_form(&j).is_zero(), || format!("{name}: J lies in I(Z) + (v)"))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for n in 1..=3 {
        chern_line_bundle_image(n).map_err(|e| format!("pn:{n}: {e}"))?;
        let z = pn(n);
        let ring = z.ring();
        let v = Polynomial::named(ring, V);
        let s: Vec<QPoly> = std::iter::once(Polynomial::one(ring))
            .chain((1..=n).map(|j| Polynomial::named(ring, &format!("x{j}"))))
            .collect();
        // (ξ s)_k = (2k - n) v s_k - 2 s_{k+1}
        let xi_s = |k: usize| {
            let diag = v.mul(&s[k]).scale(&int(2 * k as i64 - n as i64));
            if k < n {
                diag.sub(&s[k + 1].scale(&int(2)))
            } else {
                diag
            }
        };
        let c = xi_s(0);
        for k in 1..=n {
            let r = xi_s(k).sub(&c.mul(&s[k]));
            ensure(z.groebner().contains(&r), || format!("pn:{n} entry {k}: {r} not in I(Z)"))?;
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for z in (1..=3).map(pn).chain((1..=2).map(flag)) {
        let name = z.model().provenance().label();
        let a = random_class(&z, 2, &mut rng);
        let b = random_class(&z, 4, &mut rng);
        let c = random_class(&z, 6, &mut rng);
        ensure(a.add(&b) == b.add(&a) && a.mul(&b) == b.mul(&a), || format!("{name}: commutativity"))?;
        ensure(a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)), || format!("{name}: distributivity"))?;
        ensure(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), || format!("{name}: associativity"))?;
        ensure(a.add(&b).sub(&b) == a, || format!("{name}: additive inverse"))?;

        ensure(z.groebner().verify_s_pairs(), || format!("{name}: S-pair replay"))?;

        let lex = buchberger(z.ring(), z.generators(), &MonomialOrder::lex(z.ring()));
        ensure(lex.verify_s_pairs(), || format!("{name}: lex S-pair replay"))?;
        let s1 = hilbert_series_of_basis(z.groebner());
        let s2 = hilbert_series_of_basis(&lex);
        let upto = 30;
        ensure(
            expand(s1.numerator(), s1.denominator_weights(), upto) == expand(s2.numerator(), s2.denominator_weights(), upto),
            || format!("{name}: series {s1} against {s2}"),
        )?;

        if let Some(n) = name.strip_prefix("pn:").and_then(|n| n.parse::<usize>().ok()) {
            for m in 0..=n {
                let ra = z.component_restriction(&a, m).unwrap();
                let rb = z.component_restriction(&b, m).unwrap();
                let rab = z.component_restriction(&a.mul(&b), m).unwrap();
                ensure(ra.mul(&rb) == rab, || format!("{name}: restriction to component {m}"))?;
                // x_1 restricts to -m v on the m-th component
                let x1 = z.component_restriction(&Polynomial::named(z.ring(), "x1"), m).unwrap();
                ensure(x1 == UniPoly::monomial(int(-(m as i64)), 1), || format!("{name}: x1 on component {m}"))?;
            }
        }

        let guard = normalization_guard(&z).map_err(|e| e.to_string())?;
        ensure(guard.passed, || format!("{name}: pristine guard fails"))?;
        let r = z.flat_degree().unwrap() as i64;
        let scaled = zscheme_ideal(&z.model().with_scaled_generator(0, &int(3))).unwrap();
        let bad = normalization_guard(&scaled).map_err(|e| e.to_string())?;
        ensure(!bad.passed, || format!("{name}: scaling by 3 not caught"))?;
        ensure(bad.reference_integral == Rational::new(r.into(), 3.into()), || {
            format!("{name}: scaled ∫J_ref = {}", bad.reference_integral)
        })?;
        // the reference class divides J by the product of the scale factors
        let j_scaled = jacobian_class(&scaled).unwrap().jacobian;
        let integrator = Integrator::new(&scaled).unwrap();
        let value = integrator.integrate(&j_scaled.scale(&Rational::new(1.into(), 3.into()))).unwrap().value.0;
        ensure(value == UniPoly::constant(Rational::new(r.into(), 3.into())), || format!("{name}: ∫J/3"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "projective space presentations", criterion_1),
        (2, "flag varieties", criterion_2),
        (3, "regular sequences and reduced fibers", criterion_3),
        (4, "Hessenberg sweep", criterion_4),
        (5, "push-forward", criterion_5),
        (6, "Jacobian not divisible by v", criterion_6),
        (7, "line bundle congruences", criterion_7),
        (8, "property suites and normalization guard", criterion_8),
    ];
    let mut failures = 0;
    for (id, title, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("PASS criterion {id}: {title} ({} ms)", start.elapsed().as_millis()),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {id}: {title}: {why}");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
