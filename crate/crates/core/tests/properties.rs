//! Randomized invariants of every module, each checked against a route that
//! does not share code with the one under test.

mod common;

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use common::{check_relabeling, check_reynolds, check_twist, entry, small_pool, twist_pool, unimodular};
use cubicsym::catalog::normal_forms::NORMAL_FORMS;
use cubicsym::group::{
    build_character, classify_element, eigenvalue_multiplicities, generate_group, LinearCharacter,
    Verdict,
};
use cubicsym::invariants::{
    check_semi_invariance, molien_series, parse_polynomial, MonomialBasis,
    Polynomial,
};
use cubicsym::linalg::{commutant_dimension, nullspace, rref, Matrix};
use cubicsym::smooth::{
    buchberger, certify_smooth, reduce, reduce_mod, s_polynomial, Verdict as SmoothVerdict,
};
use cubicsym::{parse_cyclotomic, Cyclotomic, Rational};

const CONDUCTORS: [u32; 8] = [1, 3, 4, 5, 7, 8, 12, 15];

/// `Σ c_k ζ_n^k` from small integer seeds.
fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (0..CONDUCTORS.len(), prop::collection::vec((-4i64..=4, 1i64..=3), 1..6)).prop_map(|(i, cs)| {
        let n = CONDUCTORS[i];
        let mut z = Cyclotomic::zero();
        for (k, (num, den)) in cs.into_iter().enumerate() {
            let c = Cyclotomic::from_rational(Rational::new(num, den));
            z = &z + &(&c * &Cyclotomic::root_of_unity(n, k as i64));
        }
        z
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-8 && (a.1 - b.1).abs() < 1e-8
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |v| Matrix::from_entries(rows, cols, v.into_iter().map(Cyclotomic::from_int).collect()))
}

/// Order of a permutation group by breadth-first closure on index vectors.
fn permutation_group_order(gens: &[Vec<usize>]) -> usize {
    let n = gens[0].len();
    let id: Vec<usize> = (0..n).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

fn permutation() -> impl Strategy<Value = Vec<usize>> {
    Just((0..5).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn cyclotomic_display_round_trips(z in cyclotomic()) {
        prop_assert_eq!(parse_cyclotomic(&z.to_string()).unwrap(), z);
    }

    #[test]
    fn cyclotomic_products_match_complex_values(a in cyclotomic(), b in cyclotomic()) {
        let ab = &a * &b;
        prop_assert!(close(ab.to_complex_approx(), cmul(a.to_complex_approx(), b.to_complex_approx())));
        let sum = (&a + &b).to_complex_approx();
        let (x, y) = (a.to_complex_approx(), b.to_complex_approx());
        prop_assert!(close(sum, (x.0 + y.0, x.1 + y.1)));
    }

    #[test]
    fn cyclotomic_field_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(a.abs_sq(), a.conj().abs_sq());
        prop_assert_eq!(a.embed(a.conductor() * 7), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn roots_of_unity_have_their_order(i in 0..CONDUCTORS.len(), k in 0i64..60) {
        let n = CONDUCTORS[i];
        let z = Cyclotomic::root_of_unity(n, k);
        let g = num_integer::gcd(k.rem_euclid(n as i64), n as i64).max(1) as u32;
        let want = if k % n as i64 == 0 { 1 } else { n / g };
        prop_assert_eq!(z.root_of_unity_order(), Some(want));
    }

    #[test]
    fn rational_fast_path_matches_big_rationals(a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX) {
        let big = |n: i64, m: i64| BigRational::new(BigInt::from(n), BigInt::from(m));
        let (x, y) = (Rational::new(a, b), Rational::new(c, d));
        let (bx, by) = (big(a, b), big(c, d));
        prop_assert_eq!((&x + &y).to_big(), &bx + &by);
        prop_assert_eq!((&x * &y).to_big(), &bx * &by);
        prop_assert_eq!((&x - &y).to_big(), &bx - &by);
        if c != 0 {
            prop_assert_eq!((&x / &y).to_big(), &bx / &by);
        }
        prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
    }

    #[test]
    fn rank_plus_nullity_is_width(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| int_matrix(r, c))) {
        let (reduced, rank) = rref(&m);
        let kernel = nullspace(&m);
        prop_assert_eq!(rank + kernel.dim(), m.cols());
        for v in kernel.basis() {
            prop_assert!(m.apply(v).iter().all(Cyclotomic::is_zero));
        }
        prop_assert_eq!(rref(&reduced).0, reduced);
    }

    #[test]
    fn commutant_of_diagonal_is_sum_of_squares(exps in prop::collection::vec(0i64..3, 1..7)) {
        let diag: Vec<Cyclotomic> = exps.iter().map(|&k| Cyclotomic::root_of_unity(3, k)).collect();
        let mut counts = HashMap::new();
        for k in &exps {
            *counts.entry(k).or_insert(0usize) += 1;
        }
        let want: usize = counts.values().map(|m| m * m).sum();
        let n = exps.len();
        let d = Matrix::diagonal(&diag);
        prop_assert_eq!(commutant_dimension(std::slice::from_ref(&d), n).unwrap(), want);
        let a = unimodular(n, &[(0, n - 1, 2), (1, 0, -1)], 1);
        let conj = &(&a * &d) * &a.inverse().unwrap();
        prop_assert_eq!(commutant_dimension(&[conj], n).unwrap(), want);
    }

    #[test]
    fn closure_matches_permutation_group(p in permutation(), q in permutation()) {
        let order = permutation_group_order(&[p.clone(), q.clone()]);
        let g = generate_group(&[Matrix::permutation(&p), Matrix::permutation(&q)], 200).unwrap();
        prop_assert_eq!(g.order(), order);
        prop_assert!(g.verify_closure(50, 7));
    }

    #[test]
    fn spectrum_survives_conjugation(exps in prop::collection::vec(0i64..12, 4), moves in prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..4)) {
        let diag: Vec<Cyclotomic> = exps.iter().map(|&k| Cyclotomic::root_of_unity(12, k)).collect();
        let a = unimodular(4, &moves, 0);
        let m = &(&a * &Matrix::diagonal(&diag)) * &a.inverse().unwrap();
        let mut got = eigenvalue_multiplicities(&m).unwrap().eigenvalues();
        for z in &diag {
            let k = got.iter().position(|w| w == z);
            prop_assert!(k.is_some(), "{} missing from {:?}", z, got);
            got.remove(k.unwrap());
        }
    }

    #[test]
    fn symplectic_verdict_is_projective(row in 0..NORMAL_FORMS.len(), k in 0i64..12, moves in prop::collection::vec((0usize..6, 0usize..6, -1i64..=1), 0..3)) {
        let base = Matrix::diagonal(&NORMAL_FORMS[row].eigenvalues());
        let a = unimodular(6, &moves, 2);
        let m = &(&a * &base.scale(&Cyclotomic::root_of_unity(12, k))) * &a.inverse().unwrap();
        let r = classify_element(&m).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Pass);
        prop_assert_eq!(r.trace_consistent, Some(true));
    }

    #[test]
    fn substitution_agrees_with_evaluation(terms in prop::collection::vec((prop::collection::vec(0u8..3, 3), -3i64..=3, 0u8..3), 1..6), a in prop::collection::vec(-2i64..=2, 9), v in prop::collection::vec(-3i64..=3, 3)) {
        let f = common::polynomial(3, &terms);
        let m = common::matrix(3, &a);
        let point: Vec<Cyclotomic> = v.into_iter().map(Cyclotomic::from_int).collect();
        prop_assert_eq!(f.substitute(&m).unwrap().evaluate(&point), f.evaluate(&m.apply(&point)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    /// For a diagonal group the semi-invariant monomials can be counted
    /// directly from exponent congruences.
    #[test]
    fn diagonal_groups_count_monomials(gens in prop::collection::vec(prop::collection::vec(0i64..3, 4), 1..3), d in 0u32..5) {
        let mats: Vec<Matrix> = gens
            .iter()
            .map(|g| Matrix::diagonal(&g.iter().map(|&k| Cyclotomic::root_of_unity(3, k)).collect::<Vec<_>>()))
            .collect();
        let group = generate_group(&mats, 100).unwrap();
        let chi = LinearCharacter::trivial(&group);
        let basis = MonomialBasis::new(4, d);
        let want = basis
            .monomials()
            .iter()
            .filter(|e| gens.iter().all(|g| g.iter().zip(e.iter()).map(|(k, &x)| k * x as i64).sum::<i64>() % 3 == 0))
            .count();
        prop_assert_eq!(molien_series(&group, &chi, d as usize).unwrap().coefficient(d as usize), want as i64);
        prop_assert_eq!(common::space_or_zero(&group, &chi, d).dim(), want);
    }

    #[test]
    fn catalog_spaces_are_semi_invariant(i in 0usize..1000, d in 1u32..=3) {
        let pool = small_pool();
        let (_, g, chi) = common::group_and_character(&pool[i % pool.len()]);
        let space = common::space_or_zero(&g, &chi, d);
        let basis = MonomialBasis::new(g.degree(), d);
        for f in cubicsym::invariants::basis_polynomials(&space, &basis) {
            prop_assert!(check_semi_invariance(&f, &g, &chi));
        }
    }

    #[test]
    fn reynolds_matches_molien_and_kernel(i in 0usize..1000, d in 1u32..=3) {
        let pool = small_pool();
        check_reynolds(&pool[i % pool.len()], d).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn relabeling_moves_spaces(i in 0usize..1000, d in 1u32..=3, h in 0usize..1000, o in 0usize..8, moves in prop::collection::vec((0usize..6, 0usize..6, -2i64..=2), 0..4)) {
        let pool = small_pool();
        let p = &pool[i % pool.len()];
        let n = entry(&p.entry).spec.degree();
        check_relabeling(p, d, h, o, &unimodular(n, &moves, o)).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn twisting_preserves_spaces(i in 0usize..1000, j in 0usize..8, d in 1u32..=3) {
        let twists = twist_pool();
        let theta = &twists[i % twists.len()];
        let e = entry(&theta.entry);
        let mut chars: Vec<String> = e.spec.character_names().iter().map(|s| s.to_string()).collect();
        chars.push("trivial".into());
        check_twist(theta, &chars[j % chars.len()], d).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn twisted_characters_compose(i in 0usize..1000, k in 1i64..4) {
        let twists = twist_pool();
        let (_, g, chi) = common::group_and_character(&twists[i % twists.len()]);
        let p = chi.pow(k).product(&chi);
        let q = chi.pow(k + 1);
        prop_assert_eq!(p.values(), q.values());
        prop_assert!(chi.product(&chi.pow(-1)).is_trivial());
        let e = entry(&twists[i % twists.len()].entry);
        let rebuilt = build_character(&g, &e.spec.character_values(&twists[i % twists.len()].character).unwrap()).unwrap();
        prop_assert_eq!(rebuilt.values(), chi.values());
    }
}

/// A cubic in `n` variables from coefficient seeds over the monomial basis.
fn cubic(n: usize, coeffs: &[i64]) -> Polynomial {
    let basis = MonomialBasis::new(n, 3);
    let cs: Vec<Cyclotomic> = coeffs.iter().cycle().take(basis.len()).map(|&c| Cyclotomic::from_int(c)).collect();
    basis.polynomial(&cs)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn diagonal_cubics_are_smooth(cs in prop::collection::vec(1i64..7, 4), p in prop::sample::select(vec![2u32, 5, 7, 11])) {
        let terms = cs.iter().enumerate().map(|(i, &c)| {
            let mut e = vec![0u8; 4];
            e[i] = 3;
            (e, Cyclotomic::from_int(c))
        });
        let f = Polynomial::from_terms(4, terms);
        prop_assume!(cs.iter().all(|&c| c % p as i64 != 0));
        prop_assert!(certify_smooth(&f, p).unwrap().verdict.is_smooth());
    }

    #[test]
    fn smoothness_ignores_variable_order(cs in prop::collection::vec(-2i64..=2, 20), perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle(), p in prop::sample::select(vec![5u32, 7])) {
        let f = cubic(4, &cs);
        let g = f.substitute(&Matrix::permutation(&perm)).unwrap();
        let (Ok(a), Ok(b)) = (certify_smooth(&f, p), certify_smooth(&g, p)) else {
            return Ok(());
        };
        prop_assert_eq!(a.verdict.is_smooth(), b.verdict.is_smooth());
        for cert in [&a, &b] {
            if let SmoothVerdict::SingularPointFound(pt) = &cert.verdict {
                prop_assert!(pt.iter().any(|x| !x.is_zero()));
                prop_assert!(cert.point_is_singular(pt));
            }
        }
    }

    #[test]
    fn buchberger_output_is_reduced(cs in prop::collection::vec(-2i64..=2, 10), p in prop::sample::select(vec![5u32, 7, 11])) {
        let f = cubic(3, &cs);
        let Ok((fp, ctx)) = reduce_mod(&f, p) else {
            return Ok(());
        };
        let gens: Vec<_> = (0..3).map(|i| fp.derivative(i, &ctx)).filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let gb = buchberger(&gens, &ctx);
        let leads: Vec<_> = gb.iter().map(|g| g.leading_monomial().unwrap()).collect();
        for (i, g) in gb.iter().enumerate() {
            prop_assert_eq!(g.leading_coefficient(), Some(ctx.one()));
            for (m, _) in g.terms() {
                for (j, l) in leads.iter().enumerate() {
                    prop_assert!(i == j || !l.divides(*m));
                }
            }
            for h in &gb {
                prop_assert!(reduce(&s_polynomial(g, h, &ctx), &gb, &ctx).is_zero());
            }
        }
        for g in &gens {
            prop_assert!(reduce(g, &gb, &ctx).is_zero());
        }
    }
}

#[test]
fn parsed_forms_substitute_as_a_right_action() {
    let f = parse_polynomial("x1^2*x2 + E(3)*x3^3 - 2*x1*x2*x3", 3, &HashMap::new()).unwrap();
    let a = common::matrix(3, &[0, 1, 0, 0, 0, 1, 1, 0, 0]);
    let b = common::matrix(3, &[1, 1, 0, 0, 1, 0, 0, 0, 1]);
    assert_eq!(
        f.substitute(&a).unwrap().substitute(&b).unwrap(),
        f.substitute(&(&a * &b)).unwrap()
    );
}
