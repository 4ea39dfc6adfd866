//! Cross-module properties checked against independent references: the
//! determinant-based brute force, a rational Taylor series for `exp`, and
//! plain enumeration.

use gridcover::brute::brute_cov;
use gridcover::certify::{
    conical_closed_form, halfgrid_closed_form, lemma_opt_bound, weighting_generic2, weighting_generic3,
};
use gridcover::construct::{default_cover, halfrect_value};
use gridcover::cover::{check_weighting, cov, cov_lp, SolveOptions};
use gridcover::grid::{make_conical, make_fullgrid_random, make_generic2, make_generic3, make_halfrect, make_simplex};
use gridcover::incidence::verify_cover;
use gridcover::opt::verify;
use gridcover::{Grid, PointId, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

/// `e^x` for |x| <= 1, summed until the next term drops below 2^-200.
fn exp_oracle(x: &BigRational) -> BigRational {
    let eps = BigRational::new(BigInt::one(), BigInt::one() << 200);
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    let mut i = 1u32;
    while term.abs() > eps {
        sum += &term;
        term = term * x / BigRational::from_integer(BigInt::from(i));
        i += 1;
    }
    sum
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[test]
fn conical_closed_form_matches_high_precision() {
    for n in [2i64, 3, 7, 10, 100, 1000, 1_000_000] {
        for k in [1i64, 3] {
            let x = ratio(1, 2 * n) - ratio(1, 1);
            let exact = ratio(n * k, 1) * (ratio(1, 1) - exp_oracle(&x) - ratio(1, n));
            let got = conical_closed_form(n as u64, k as u64).unwrap().as_f64();
            let want = exact.to_f64().unwrap();
            assert!((got - want).abs() <= 1e-9, "n={n} k={k}: {got} vs {want}");
        }
    }
}

#[test]
fn halfgrid_closed_form_matches_high_precision() {
    for (m, n) in [(2i64, 2i64), (2, 9), (3, 7), (5, 5), (6, 40)] {
        for k in [1i64, 2] {
            // e^{-n/m} as a power of e^{-1/m} keeps the series argument small.
            let base = exp_oracle(&(-ratio(1, m)));
            let mut e = BigRational::one();
            for _ in 0..n {
                e *= &base;
            }
            let want = (ratio(m * k, 1) * (ratio(1, 1) - e)).to_f64().unwrap();
            let got = halfgrid_closed_form(m as u64, n as u64, k as u64).unwrap().as_f64();
            assert!((got - want).abs() <= 1e-9, "m={m} n={n} k={k}: {got} vs {want}");
        }
    }
}

/// Lower certificates, LP value, integer value, and construction size are
/// ordered, and every LP along the way verifies with a zero gap.
fn sandwich(g: &Grid, k: u64, missing: Option<PointId>) {
    let lp = cov_lp(g, k, missing, false).unwrap();
    verify(&lp.program, &lp.solution).unwrap();
    let dual = check_weighting(g, &lp.weighting, k, false);
    assert!(dual.ok, "LP dual weighting infeasible: {:?}", dual.violations.first());
    assert_eq!(dual.objective, lp.value);
    let r = cov(g, k, missing, &SolveOptions::default()).unwrap();
    assert!(lp.value <= Scalar::from(r.value));
    let rep = verify_cover(g, &r.cover, k, missing).unwrap();
    assert!(rep.ok, "optimal cover fails verification");
    assert_eq!(r.cover.size(), r.value);
    if let Some(c) = default_cover(g, k, missing) {
        assert!(verify_cover(g, &c, k, missing).unwrap().ok);
        assert!(r.value <= c.size());
    }
    if g.dim() == 2 && missing.is_none() {
        assert!(lemma_opt_bound(&g.row_profile(None), k) <= r.value);
    }
}

#[test]
fn sandwich_on_named_instances() {
    sandwich(&make_simplex(2, 4).unwrap(), 2, Some(0));
    sandwich(&make_simplex(3, 3).unwrap(), 1, Some(0));
    sandwich(&make_halfrect(3, 5).unwrap(), 1, Some(4));
    sandwich(&make_generic2(5, 2).unwrap(), 2, Some(0));
    sandwich(&make_generic3(2, 1).unwrap(), 2, Some(0));
    sandwich(&make_fullgrid_random(3, 3, 4).unwrap(), 2, None);
}

#[test]
fn generic2_weighting_objective_identity() {
    for n in 4..=12u64 {
        let g = make_generic2(n as usize, n).unwrap();
        for k in 1..=4u64 {
            let w = weighting_generic2(&g, k).unwrap();
            let want = Scalar::new((3 * n * k) as i64, 2) - Scalar::from(2 * k);
            assert_eq!(w.total(), want, "n={n} k={k}");
        }
    }
}

#[test]
fn generic2_weighting_is_feasible_and_below_lp() {
    for n in 4..=6 {
        let g = make_generic2(n, 3).unwrap();
        let w = weighting_generic2(&g, 1).unwrap();
        let rep = check_weighting(&g, &w, 1, false);
        assert!(rep.ok, "n={n}: {:?}", rep.violations.first());
        let lp = cov_lp(&g, 1, g.vertex(), false).unwrap();
        assert!(rep.objective <= lp.value);
    }
}

#[test]
fn generic3_weighting_decomposes() {
    for n in [3u64, 4, 6, 9] {
        let g = make_generic3(n as usize, 0).unwrap();
        let w = weighting_generic3(&g, n, false).unwrap();
        assert_eq!(w.axes, Scalar::from(n * n));
        assert_eq!(w.faces, Scalar::new((3 * (n - 1) * n) as i64, 6));
        assert_eq!(w.weighting.total(), &w.axes + &w.faces + &w.interior);
    }
}

#[test]
fn generic3_interior_share_approaches_two_ninths() {
    let target = 2.0 / 9.0;
    let shares: Vec<(u64, f64)> = [6u64, 9, 12]
        .into_iter()
        .map(|n| {
            let g = make_generic3(n as usize, 0).unwrap();
            let w = weighting_generic3(&g, n, false).unwrap();
            (n, (&w.interior / Scalar::from(n * n)).to_f64())
        })
        .collect();
    assert!(
        shares.iter().all(|(_, s)| (s - target).abs() <= 0.05),
        "interior/(nk) by n: {shares:?}"
    );
}

fn small_grid() -> impl Strategy<Value = (Grid, bool)> {
    prop_oneof![
        (1usize..=4, 0u64..50).prop_map(|(n, s)| (make_conical(n, s).unwrap(), false)),
        (1usize..=3, 1usize..=3, 0u64..50).prop_map(|(a, b, s)| (make_fullgrid_random(a, b, s).unwrap(), true)),
        (2usize..=4, 0u64..50).prop_map(|(n, s)| (make_generic2(n, s).unwrap(), true)),
        (2usize..=4).prop_map(|n| (make_simplex(2, n).unwrap(), true)),
        (2usize..=3).prop_map(|n| (make_halfrect(2, n).unwrap(), false)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cov_matches_brute_force((g, has_vertex) in small_grid(), k in 1u64..=2, use_vertex in any::<bool>()) {
        let missing = if has_vertex && use_vertex { g.vertex() } else { None };
        let r = cov(&g, k, missing, &SolveOptions::default()).unwrap();
        prop_assert_eq!(r.value, brute_cov(&g, k, missing).unwrap());
        prop_assert!(verify_cover(&g, &r.cover, k, missing).unwrap().ok);
    }

    #[test]
    fn halfrect_formula_matches_brute_force(m in 2usize..=3, extra in 0usize..=2, pick in 0usize..64) {
        let n = m + extra;
        let g = make_halfrect(m, n).unwrap();
        prop_assume!(g.len() <= 10);
        let p = pick % g.len();
        let want = halfrect_value(m, n, g.point(p).indices[1]) as u64;
        prop_assert_eq!(brute_cov(&g, 1, Some(p)).unwrap(), want);
    }

    #[test]
    fn sandwich_on_random_conical(n in 2usize..=4, seed in 0u64..1000, k in 1u64..=3) {
        sandwich(&make_conical(n, seed).unwrap(), k, None);
    }

    #[test]
    fn generators_are_deterministic(n in 2usize..=5, seed in 0u64..1000) {
        prop_assert_eq!(make_conical(n, seed).unwrap(), make_conical(n, seed).unwrap());
        prop_assert_eq!(make_generic2(n, seed).unwrap().fingerprint(), make_generic2(n, seed).unwrap().fingerprint());
    }
}
