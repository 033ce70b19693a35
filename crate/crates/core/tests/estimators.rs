mod common;

use cascade_clock::cascade::{choose_initial_set, simulate_ic};
use cascade_clock::clockwork::{aggregate, distance, stretch_distort};
use cascade_clock::estimators::{
    clock_log_likelihood, dp_mlp, exhaustive_best, fastclock, run_estimator, EXHAUSTIVE_LIMIT,
};
use cascade_clock::{
    CascadeParams, Clock, EstimationInput, EstimationInputF32, EstimatorKind, Error, Graph,
    ObservedSequence,
};
use proptest::prelude::*;

fn observed_cascade(n: usize, p: f64, p_n: f64, p_e: f64, l: usize, seed: u64) -> (Graph, ObservedSequence, Clock) {
    let g = Graph::generate_er(n, p, seed).unwrap();
    let params = CascadeParams::new(p_n, p_e).unwrap();
    let s0 = choose_initial_set(n, 1, seed ^ 3).unwrap();
    let mut seq = simulate_ic(&g, &params, &s0, 40, seed ^ 5).unwrap();
    seq.trim_trailing_empty();
    let (obs, truth) = stretch_distort(&seq, l, seed ^ 9).unwrap();
    (g, obs, truth)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fastclock_returns_a_valid_clock(
        n in 5usize..150,
        p in 0.02f64..0.4,
        p_n in 0.0f64..=1.0,
        p_e in 0.0f64..0.05,
        l in 1usize..5,
        seed in any::<u64>(),
    ) {
        let (g, obs, _) = observed_cascade(n, p, p_n, p_e, l, seed);
        let params = CascadeParams::new(p_n, p_e).unwrap();
        let input = EstimationInput::new(&g, params, &obs, 1).unwrap();
        let clock = fastclock(&input).unwrap();
        prop_assert_eq!(clock.last(), obs.last_index());
        prop_assert_eq!(clock.boundaries()[0], input.initial_boundary().unwrap());
        prop_assert_eq!(aggregate(&obs, &clock).unwrap().infected_count(), obs.steps().iter().map(Vec::len).sum::<usize>());
        prop_assert_eq!(fastclock(&input).unwrap(), clock.clone());
        let narrow: EstimationInputF32 = cascade_clock::estimators::EstimationInput::new(&g, params.cast(), &obs, 1).unwrap();
        prop_assert_eq!(fastclock(&narrow).unwrap().last(), clock.last());
    }

    #[test]
    fn dp_likelihood_is_the_maximum(
        n in 4usize..18,
        p in 0.1f64..0.6,
        p_n in 0.1f64..0.9,
        p_e in 0.0f64..0.05,
        seed in any::<u64>(),
    ) {
        let (g, obs, _) = observed_cascade(n, p, p_n, p_e, 2, seed);
        prop_assume!(obs.len() <= 12);
        let params = CascadeParams::new(p_n, p_e).unwrap();
        let input = EstimationInput::new(&g, params, &obs, 1).unwrap();
        let dp = dp_mlp(&input).unwrap();
        let oracle = common::best_likelihood_by_enumeration(&g, obs.steps(), 1, p_n, p_e);
        if oracle == f64::NEG_INFINITY {
            prop_assert!(dp.degenerate);
        } else {
            prop_assert!(!dp.degenerate);
            prop_assert!((dp.log_likelihood - oracle).abs() <= 1e-9 * oracle.abs().max(1.0));
            let again: f64 = clock_log_likelihood(&input, &dp.clock).unwrap();
            prop_assert!((again - dp.log_likelihood).abs() <= 1e-9 * oracle.abs().max(1.0));
            let reference = common::clock_likelihood(&g, obs.steps(), dp.clock.boundaries(), p_n, p_e);
            prop_assert!((reference - dp.log_likelihood).abs() <= 1e-9 * oracle.abs().max(1.0));
        }
    }
}

#[test]
fn stretch_one_recovers_identity_on_deterministic_cascades() {
    // With p_n = 1 and p_e = 0 every step is forced; the DP must keep every step.
    for seed in 0..10 {
        let (g, obs, truth) = observed_cascade(60, 0.05, 1.0, 0.0, 1, seed);
        let input = EstimationInput::new(&g, CascadeParams::new(1.0, 0.0).unwrap(), &obs, 1).unwrap();
        let dp = dp_mlp(&input).unwrap();
        let d: f64 = distance(&obs.sizes(), &truth, &dp.clock).unwrap();
        assert_eq!(d, 0.0, "seed {seed}");
    }
}

#[test]
fn fastclock_accuracy_improves_with_graph_size() {
    // Mean over many cascades on ER graphs with p = n^{-1/3}: the smallest
    // graphs are clearly worse than much larger ones.
    let mean_distance = |n: usize| {
        let p = (n as f64).powf(-1.0 / 3.0);
        let ds: Vec<f64> = (0..40u64)
            .map(|i| {
                let (g, obs, truth) = observed_cascade(n, p, 0.1, 1e-7, 2, 1000 * n as u64 + i);
                let input = EstimationInput::new(&g, CascadeParams::new(0.1, 1e-7).unwrap(), &obs, 1).unwrap();
                distance(&obs.sizes(), &truth, &fastclock(&input).unwrap()).unwrap()
            })
            .collect();
        common::mean_and_se(&ds)
    };
    let (small, se_small) = mean_distance(300);
    let (large, se_large) = mean_distance(6000);
    assert!(large < small, "n=300: {small} ± {se_small}, n=6000: {large} ± {se_large}");
}

#[test]
fn exhaustive_search_has_a_size_limit() {
    let g = Graph::from_edges(2, [(0, 1)]).unwrap();
    let mut steps = vec![vec![0]];
    steps.extend(std::iter::repeat_with(Vec::new).take(EXHAUSTIVE_LIMIT + 1));
    steps.push(vec![1]);
    let obs = ObservedSequence::new(steps).unwrap();
    let input = EstimationInput::new(&g, CascadeParams::new(0.5, 0.1).unwrap(), &obs, 1).unwrap();
    assert!(matches!(exhaustive_best(&input), Err(Error::TooLarge { .. })));
    assert!(dp_mlp(&input).is_ok());
}

#[test]
fn initial_set_size_must_match_a_prefix() {
    let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    let obs = ObservedSequence::new(vec![vec![0, 1], vec![2], vec![3]]).unwrap();
    let input = EstimationInput::new(&g, CascadeParams::new(0.5, 0.0).unwrap(), &obs, 1).unwrap();
    assert!(matches!(fastclock(&input), Err(Error::InitialSetMismatch { .. })));
    assert!(matches!(dp_mlp(&input), Err(Error::InitialSetMismatch { .. })));
    assert!(EstimationInput::new(&g, CascadeParams::new(0.5, 0.0).unwrap(), &obs, 0).is_err());
}

#[test]
fn run_estimator_records_metadata() {
    let (g, obs, _) = observed_cascade(80, 0.08, 0.3, 0.001, 2, 4);
    let input = EstimationInput::new(&g, CascadeParams::new(0.3, 0.001).unwrap(), &obs, 1).unwrap();
    let fc = run_estimator(EstimatorKind::FastClock, &input).unwrap();
    assert!(fc.wall_clock_ns > 0);
    assert!(fc.log_likelihood.is_none());
    let dp = run_estimator(EstimatorKind::Dp, &input).unwrap();
    assert!(dp.log_likelihood.is_some());
    let json = serde_json::to_value(&dp).unwrap();
    assert_eq!(json["estimator"], "dp");
}
