//! The recursive right-hand side against the closed double-sum form.

use stochastic_mann::cases::{golden_problem, kepler_problem};
use stochastic_mann::iteration::{pathwise_error_bound, run_mann};

fn direct_rhs(n: usize, big_n: f64, a: f64, s: f64, xi: &[f64]) -> f64 {
    let prod = |from: usize| (from..=n).map(|j| 1.0 - s / j as f64).product::<f64>();
    let head = big_n * prod(1);
    let tail: f64 = (1..=n).map(|i| a / (i * i) as f64 * prod(i + 1) * xi[i - 1].abs()).sum();
    head + tail
}

#[test]
fn recursion_matches_double_sum() {
    for case in [golden_problem(), kepler_problem()] {
        let mut config = case.config;
        config.n_max = 400;
        let trace = run_mann(&case.problem, &config, &case.noise).unwrap();
        let bound = pathwise_error_bound(&trace, &case.problem, &config).unwrap();
        let xi: Vec<f64> = trace.states.iter().map(|s| s.xi).collect();
        let s = config.decay(&case.problem);
        for row in &bound.rows {
            let want = direct_rhs(row.n, config.radius, config.a, s, &xi);
            assert!((row.rhs - want).abs() <= 1e-12 * want, "{} n={}: {} vs {want}", case.problem.name(), row.n, row.rhs);
        }
        assert_eq!(bound.violations(), 0);
    }
}

#[test]
fn zero_noise_bound_is_deterministic_envelope() {
    let case = golden_problem().zero_noise();
    let mut config = case.config;
    config.n_max = 5000;
    let trace = run_mann(&case.problem, &config, &case.noise).unwrap();
    let bound = pathwise_error_bound(&trace, &case.problem, &config).unwrap();
    assert_eq!(bound.violations(), 0);
    // Without noise the right side is N ∏(1 - s/i) <= N (2/(n+1))^s.
    let s = config.decay(&case.problem);
    for row in bound.rows.iter().step_by(97) {
        let env = config.radius * (2.0 / (row.n + 1) as f64).powf(s);
        assert!(row.rhs <= env * (1.0 + 1e-12));
        assert!(row.lhs <= env);
    }
}

#[test]
fn clamped_traces_are_rejected() {
    let mut case = kepler_problem();
    case.config.n_max = 2000;
    case.config.clamp_to_domain = true;
    let noise = case.noise.with_seed(1);
    let noise = stochastic_mann::noise::NoiseSpec { innovation_scale: 50.0, ..noise };
    let trace = run_mann(&case.problem, &case.config, &noise).unwrap();
    assert!(trace.clamp_events > 0);
    assert!(pathwise_error_bound(&trace, &case.problem, &case.config).is_err());
}
