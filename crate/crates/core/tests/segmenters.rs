//! Optimal solver against exhaustive enumeration, and the heuristics against it.

mod common;

use adaseg::{
    generate, optimal_cost_curve, optimal_segmentation, topdown_adaptive, topdown_fixed,
    GeneratorKind, GeneratorSpec, Segmentation, TimeSeries,
};
use common::{brute_force_optimum, range_sse, TestRng};
use proptest::prelude::*;

fn small_series() -> impl Strategy<Value = TimeSeries> {
    prop::collection::vec(-10.0f64..10.0, 1..=12)
        .prop_map(|ys| TimeSeries::from_values(ys).unwrap())
}

fn check_consistent(seg: &Segmentation, s: &TimeSeries, k: usize) {
    assert!(seg.model_complexity() <= k);
    let b = seg.boundaries();
    assert_eq!(*b.first().unwrap(), 0);
    assert_eq!(*b.last().unwrap(), s.len());
    let residual = seg.residual_sse(s).unwrap();
    assert!((residual - seg.total_sse()).abs() <= 1e-9 * seg.total_sse().max(1.0));
    let naive: f64 = seg
        .segments()
        .iter()
        .map(|g| range_sse(s, g.start, g.end, g.degree))
        .sum();
    assert!((naive - seg.total_sse()).abs() <= 1e-9 * naive.max(1.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dp_matches_enumeration(s in small_series(), k in 1usize..=5) {
        let seg = optimal_segmentation(&s, k, 2).unwrap();
        let best = brute_force_optimum(&s, k, 2);
        prop_assert!((seg.total_sse() - best).abs() <= 1e-9, "dp {} vs {}", seg.total_sse(), best);
        check_consistent(&seg, &s, k);
    }

    #[test]
    fn dp_never_loses_to_heuristics(s in small_series(), k in 2usize..=8) {
        let opt = optimal_segmentation(&s, k, 2).unwrap().total_sse();
        let tol = 1e-9 * opt.max(1.0);
        prop_assert!(opt <= topdown_adaptive(&s, 2, k).unwrap().total_sse() + tol);
        prop_assert!(opt <= topdown_fixed(&s, 1, k).unwrap().total_sse() + tol);
        prop_assert!(opt <= topdown_fixed(&s, 0, k).unwrap().total_sse() + tol);
    }

    #[test]
    fn adaptive_never_loses_to_linear(
        ys in prop::collection::vec(-50.0f64..50.0, 2..120),
        k in 2usize..30,
    ) {
        let s = TimeSeries::from_values(ys).unwrap();
        let lin = topdown_fixed(&s, 1, k).unwrap();
        let ada = topdown_adaptive(&s, 2, k).unwrap();
        prop_assert!(ada.total_sse() <= lin.total_sse());
        prop_assert!(ada.model_complexity() <= k);
        prop_assert!(lin.model_complexity() <= k);
        check_consistent(&ada, &s, k);
        check_consistent(&lin, &s, k);
    }

    #[test]
    fn optimal_cost_is_monotone_in_budget(s in small_series()) {
        let curve = optimal_cost_curve(&s, 8, 2).unwrap();
        prop_assert!(curve.windows(2).all(|w| w[1] <= w[0]));
        if s.len() <= 8 {
            prop_assert!(curve[s.len() - 1].abs() < 1e-9);
        }
    }
}

#[test]
fn ten_point_series_against_enumeration() {
    let mut rng = TestRng::new(10);
    let ys: Vec<f64> = (0..10).map(|_| rng.range(-5.0, 5.0)).collect();
    let s = TimeSeries::from_values(ys).unwrap();
    let seg = optimal_segmentation(&s, 4, 2).unwrap();
    assert!((seg.total_sse() - brute_force_optimum(&s, 4, 2)).abs() <= 1e-9);
}

#[test]
fn dp_with_quadratics_against_enumeration() {
    let mut rng = TestRng::new(3);
    for _ in 0..20 {
        let n = 3 + rng.below(6);
        let ys: Vec<f64> = (0..n).map(|_| rng.range(-5.0, 5.0)).collect();
        let s = TimeSeries::from_values(ys).unwrap();
        for k in 1..=5 {
            let seg = optimal_segmentation(&s, k, 3).unwrap();
            assert!((seg.total_sse() - brute_force_optimum(&s, k, 3)).abs() <= 1e-7);
        }
    }
}

#[test]
fn staircase_cost_curve_entry() {
    let s = TimeSeries::from_values(vec![0.0, 0.0, 1.0, 1.0]).unwrap();
    let curve = optimal_cost_curve(&s, 2, 2).unwrap();
    assert!(curve[1].abs() < 1e-12);
    assert!((brute_force_optimum(&s, 2, 2) - curve[1]).abs() < 1e-12);
}

#[test]
fn heuristics_on_random_walks_respect_invariants() {
    for seed in 0..10 {
        let s = generate(&GeneratorSpec::new(GeneratorKind::RandomWalk, 300, seed)).unwrap();
        for k in [2, 5, 10, 20] {
            for seg in [
                topdown_fixed(&s, 0, k).unwrap(),
                topdown_fixed(&s, 1, k).unwrap(),
                topdown_adaptive(&s, 2, k).unwrap(),
                optimal_segmentation(&s, k, 2).unwrap(),
            ] {
                check_consistent(&seg, &s, k);
            }
        }
    }
}

#[test]
fn splitting_a_line_into_constants_keeps_complexity() {
    let s = TimeSeries::from_values(vec![0.0, 0.0, 1.0, 1.0]).unwrap();
    let lin = topdown_fixed(&s, 1, 2).unwrap();
    let ada = topdown_adaptive(&s, 2, 2).unwrap();
    assert_eq!(lin.model_complexity(), ada.model_complexity());
    assert_eq!(ada.segments().len(), 2);
}
