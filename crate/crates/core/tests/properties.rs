use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use zscheme::cohomology::{betti_numbers_valid, equivariant_presentation, ordinary_presentation};
use zscheme::exactalg::{determinant, int, parse_polynomial, Monomial, Polynomial, QPoly, Rational, UniPoly, WeightedRing, V};
use zscheme::fundscheme::{zscheme_ideal, ZSchemeIdeal};
use zscheme::groebner::{
    buchberger, grevlex_basis, hilbert_series, hilbert_series_of_basis, saturate, standard_monomials, tpoly,
    MonomialOrder, QuotientAlgebra,
};
use zscheme::hessenberg::{hessenberg_ideal, hessenberg_poincare, peel_factors};
use zscheme::pushforward::{equivariant_integral, Integrator};
use zscheme::regvariety::{flag_model_a, projective_space_model, validate_regular};
use zscheme::rootsys::{all_hessenberg_spaces, peterson_omega, require_valid, RootSystem, RootSystemA};

fn ring() -> &'static Arc<WeightedRing> {
    static RING: OnceLock<Arc<WeightedRing>> = OnceLock::new();
    RING.get_or_init(|| WeightedRing::new(&["x", "y", "z"], &[2, 2, 4]).unwrap())
}

fn models() -> &'static Vec<ZSchemeIdeal> {
    static MODELS: OnceLock<Vec<ZSchemeIdeal>> = OnceLock::new();
    MODELS.get_or_init(|| {
        (1..=3)
            .map(|n| zscheme_ideal(&projective_space_model(n).unwrap()).unwrap())
            .chain((1..=2).map(|l| zscheme_ideal(&flag_model_a(l).unwrap()).unwrap()))
            .collect()
    })
}

fn term() -> impl Strategy<Value = (Vec<u32>, i64, i64)> {
    (prop::collection::vec(0u32..3, 3), -5i64..=5, 1i64..=3)
}

fn poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(term(), 0..5).prop_map(|terms| {
        Polynomial::from_terms(
            ring(),
            terms
                .into_iter()
                .map(|(e, n, d)| (Monomial::new(e), Rational::new(n.into(), d.into()))),
        )
    })
}

/// A homogeneous polynomial of the given degree in `ring()`.
fn homogeneous(degree: u32) -> impl Strategy<Value = QPoly> {
    let monomials = ring().monomials_of_degree(degree);
    prop::collection::vec(-3i64..=3, monomials.len())
        .prop_map(move |cs| Polynomial::from_terms(ring(), monomials.iter().cloned().zip(cs.into_iter().map(int))))
}

/// A random class in the ring of `z`.
fn class(z: &ZSchemeIdeal, degree: u32, coeffs: &[i64]) -> QPoly {
    let terms = z
        .ring()
        .monomials_of_degree(degree)
        .into_iter()
        .zip(coeffs.iter().cycle())
        .map(|(m, &c)| (m, int(c)));
    Polynomial::from_terms(z.ring(), terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&Polynomial::one(ring())), a.clone());
    }

    #[test]
    fn degree_is_additive(d1 in 0u32..4, d2 in 0u32..4, seed in any::<u64>()) {
        let runner = |d: u32, s: u64| {
            let ms = ring().monomials_of_degree(2 * d);
            let terms = ms.into_iter().enumerate().map(|(i, m)| (m, int(((s >> (i % 60)) & 3) as i64 + 1)));
            Polynomial::from_terms(ring(), terms)
        };
        let p = runner(d1, seed);
        let q = runner(d2, seed.rotate_left(7));
        prop_assert_eq!(p.mul(&q).weighted_degree().value(), Some(2 * (d1 + d2)));
    }

    #[test]
    fn parse_of_print_is_identity(p in poly()) {
        let back = parse_polynomial(&p.to_string(), ring()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn determinant_flips_sign_under_row_swap(entries in prop::collection::vec(poly(), 9)) {
        let rows: Vec<Vec<QPoly>> = entries.chunks(3).map(|r| r.to_vec()).collect();
        let mut swapped = rows.clone();
        swapped.swap(0, 2);
        let d = determinant(ring(), &rows).unwrap();
        let s = determinant(ring(), &swapped).unwrap();
        prop_assert_eq!(d.neg(), s);
        // linear in the first row
        let mut doubled = rows.clone();
        doubled[0] = doubled[0].iter().map(|p| p.scale(&int(2))).collect();
        prop_assert_eq!(determinant(ring(), &doubled).unwrap(), d.scale(&int(2)));
    }

    #[test]
    fn groebner_bases_replay(f in homogeneous(4), g in homogeneous(4), h in homogeneous(6)) {
        let gens = vec![f, g, h];
        let gb = grevlex_basis(ring(), &gens);
        prop_assert!(gb.verify_s_pairs());
        for p in &gens {
            prop_assert!(gb.contains(p));
        }
        let lex = buchberger(ring(), &gens, &MonomialOrder::lex(ring()));
        prop_assert!(lex.verify_s_pairs());
        // order and permutation invariance of the Hilbert series
        let a = hilbert_series_of_basis(&gb);
        let b = hilbert_series_of_basis(&lex);
        prop_assert!(a.same_series(&b), "{} against {}", a, b);
        let mut permuted = gens.clone();
        permuted.rotate_left(1);
        prop_assert!(hilbert_series(ring(), &permuted).unwrap().same_series(&a));
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(p in poly(), q in poly(), n in -4i64..=4) {
        let gb = grevlex_basis(ring(), &[
            parse_polynomial("x^2 - y*x", ring()).unwrap(),
            parse_polynomial("y^3 - z*x", ring()).unwrap(),
            parse_polynomial("z^2 + x*y^3", ring()).unwrap(),
        ]);
        let nf = |f: &QPoly| gb.normal_form(f);
        prop_assert_eq!(nf(&nf(&p)), nf(&p));
        prop_assert_eq!(nf(&p.add(&q)), nf(&p).add(&nf(&q)));
        prop_assert_eq!(nf(&p.scale(&int(n))), nf(&p).scale(&int(n)));
    }

    #[test]
    fn weyl_action_round_trips(rank in 1usize..=4, w_index in 0usize..120, r_index in 0usize..20) {
        let sys = RootSystemA::new(rank).unwrap();
        let weyl = sys.weyl_group();
        let w = &weyl[w_index % weyl.len()];
        let roots: Vec<_> = sys.positive_roots().iter().cloned().chain(sys.negative_roots()).collect();
        let alpha = &roots[r_index % roots.len()];
        let moved = w.act(alpha).unwrap();
        prop_assert!(sys.is_root(&moved));
        prop_assert_eq!(&w.act(&w.inverse().act(alpha).unwrap()).unwrap(), alpha);
    }

    #[test]
    fn integral_is_linear_over_v(model in 0usize..5, d in 0u32..5, cs in prop::collection::vec(-3i64..=3, 1..6), ds in prop::collection::vec(-3i64..=3, 1..6)) {
        let z = &models()[model];
        let integrator = Integrator::new(z).unwrap();
        let f = class(z, 2 * d, &cs);
        let g = class(z, 2 * d, &ds);
        let int_f = integrator.integrate(&f).unwrap().value.0;
        let int_g = integrator.integrate(&g).unwrap().value.0;
        let v = Polynomial::named(z.ring(), V);
        let int_vf = integrator.integrate(&v.mul(&f)).unwrap().value.0;
        prop_assert_eq!(int_vf, int_f.mul(&UniPoly::var()));
        prop_assert_eq!(integrator.integrate(&f.add(&g)).unwrap().value.0, int_f.add(&int_g));
    }

    #[test]
    fn restriction_is_multiplicative(n in 1usize..=3, m in 0usize..=3, d1 in 0u32..4, d2 in 0u32..4, cs in prop::collection::vec(-3i64..=3, 1..6)) {
        let z = &models()[n - 1];
        let m = m.min(n);
        let f = class(z, 2 * d1, &cs);
        let g = class(z, 2 * d2, &cs[1..]).add(&Polynomial::one(z.ring()));
        let rf = z.component_restriction(&f, m).unwrap();
        let rg = z.component_restriction(&g, m).unwrap();
        prop_assert_eq!(z.component_restriction(&f.mul(&g), m).unwrap(), rf.mul(&rg));
        let rsum = z.component_restriction(&f.add(&g), m).unwrap();
        prop_assert_eq!(rsum, rf.add(&rg));
    }
}

#[test]
fn quotient_dimension_matches_standard_monomials() {
    for z in models() {
        let gb = z.ordinary_groebner();
        let basis = standard_monomials(gb).unwrap();
        let series = hilbert_series_of_basis(gb).as_polynomial().unwrap();
        assert_eq!(basis.len() as i64, tpoly::eval_at_one(&series));
        assert_eq!(QuotientAlgebra::new(gb.clone()).unwrap().dim(), basis.len());
    }
}

#[test]
fn trace_form_detects_reduced_fibers() {
    for n in 1..=3 {
        let z = &models()[n - 1];
        for v0 in [int(0), int(1), int(2), int(-1), int(3)] {
            let fiber = z.fiber(&v0).unwrap();
            let separated = fiber.distinct_values[0] == fiber.dimension;
            assert_eq!(fiber.trace_form_determinant != int(0), separated, "pn:{n} at v={v0}");
            assert_eq!(fiber.reduced, v0 != int(0));
        }
    }
}

#[test]
fn flag_and_projective_line_agree() {
    let p1 = &models()[0];
    let f1 = &models()[3];
    assert_eq!(p1.flat_degree().unwrap(), 2);
    assert_eq!(f1.flat_degree().unwrap(), 2);
    let (a, _) = p1.hilbert_series_z().unwrap();
    let (b, _) = f1.hilbert_series_z().unwrap();
    assert!(a.same_series(&b));
}

#[test]
fn model_invariants() {
    for z in models() {
        let m = z.model();
        for (g, &a) in m.generators().iter().zip(m.weights()) {
            assert_eq!(g.weighted_degree().value(), Some(a + 2));
        }
        for (p, &a) in m.vimages().iter().zip(m.weights()) {
            assert_eq!(p.weighted_degree().value(), Some(a + 2));
        }
        // ∏ (1 - t^{a+2}) / (1 - t^a) at t = 1 is ∏ (a + 2) / a
        let predicted = m.weights().iter().fold(int(1), |acc, &a| acc * Rational::new((a + 2).into(), a.into()));
        let dim = validate_regular(m).dimension.unwrap();
        assert_eq!(int(dim as i64), predicted);
        assert_eq!(z.flat_degree().unwrap(), dim);
        for v0 in [int(1), int(2), int(-1)] {
            assert_eq!(z.fiber(&v0).unwrap().dimension, dim);
        }
    }
}

#[test]
fn equivariant_series_specializes_to_ordinary() {
    for z in models() {
        let (full, ordinary) = z.hilbert_series_z().unwrap();
        assert!(full.times_one_minus(&[2]).same_series(&ordinary));
        let poly = ordinary.as_polynomial().unwrap();
        assert!(betti_numbers_valid(&poly));
        let e = equivariant_presentation(z.model()).unwrap();
        let o = ordinary_presentation(z.model()).unwrap();
        assert_eq!(e.euler, o.euler);
        assert_eq!(o.hilbert_numerator, poly);
    }
}

#[test]
fn integral_of_the_unit_vanishes() {
    for z in models() {
        assert!(equivariant_integral(z, &Polynomial::one(z.ring())).unwrap().value.0.is_zero());
    }
}

#[test]
fn peterson_spaces_validate() {
    for rank in 1..=5 {
        require_valid(&peterson_omega(rank).unwrap()).unwrap();
    }
}

#[test]
fn hessenberg_poincare_is_monotone() {
    let spaces = all_hessenberg_spaces(3).unwrap();
    let data: Vec<_> = spaces
        .iter()
        .map(|s| hessenberg_poincare(&hessenberg_ideal(s).unwrap()).unwrap().poincare)
        .collect();
    for (i, a) in spaces.iter().enumerate() {
        for (j, b) in spaces.iter().enumerate() {
            if a.omega().is_subset(b.omega()) {
                let (p, q) = (&data[i], &data[j]);
                assert!(p.len() <= q.len());
                assert!(p.iter().zip(q).all(|(x, y)| x <= y), "{} ⊆ {}", a.describe(), b.describe());
            }
        }
    }
}

#[test]
fn complete_intersection_degrees_ignore_generator_order() {
    for space in all_hessenberg_spaces(2).unwrap() {
        let h = hessenberg_ideal(&space).unwrap();
        let ring = h.flag().ring().clone();
        let vi = ring.v_index().unwrap();
        let degrees = |gens: &[QPoly]| {
            let gb = saturate(&ring, gens, vi).unwrap();
            peel_factors(hilbert_series_of_basis(&gb).numerator()).0
        };
        let forward = degrees(h.generators());
        let mut reversed = h.generators().to_vec();
        reversed.reverse();
        assert_eq!(forward, degrees(&reversed), "{}", space.describe());
    }
}

#[test]
fn hessenberg_ideal_contains_flag_ideal() {
    for space in all_hessenberg_spaces(3).unwrap() {
        assert!(hessenberg_ideal(&space).unwrap().contains_flag_ideal().unwrap());
    }
}

#[test]
fn scaling_a_generator_scales_integrals() {
    for z in models() {
        let scaled = zscheme_ideal(&z.model().with_scaled_generator(0, &int(3))).unwrap();
        let pristine = Integrator::new(z).unwrap();
        let perturbed = Integrator::new(&scaled).unwrap();
        let n = z.nvars() as u32;
        for coeffs in [[1, 2, -1], [3, 0, 1]] {
            let f = class(z, 2 * n + 2, &coeffs);
            let a = pristine.integrate(&f).unwrap().value.0;
            let b = perturbed.integrate(&f).unwrap().value.0;
            assert_eq!(b.scale(&int(3)), a);
        }
        assert_eq!(grevlex_basis(z.ring(), scaled.generators()).elements(), z.groebner().elements());
    }
}
