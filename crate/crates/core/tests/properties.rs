use proptest::prelude::*;
use stochastic_mann::bounds::{product_bound, rate_epsilon, weighted_sum_bound, FukNagaev};
use stochastic_mann::cases::golden_problem;
use stochastic_mann::config::RunConfig;
use stochastic_mann::iteration::run_mann;
use stochastic_mann::noise::{generate_noise_sequence, NoiseSpec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn noise_prefix_consistency(seed in any::<u64>(), phi in -0.99f64..0.99, short in 1usize..200, extra in 0usize..200) {
        let spec = NoiseSpec::new(phi, 1.0, seed).unwrap();
        let a = generate_noise_sequence(&spec, short).unwrap();
        let b = generate_noise_sequence(&spec, short + extra).unwrap();
        prop_assert_eq!(&a[..], &b[..short]);
    }

    #[test]
    fn trace_prefix_consistency(seed in any::<u64>(), n in 2usize..500) {
        let mut case = golden_problem();
        case.config.n_max = n;
        let noise = case.noise.with_seed(seed);
        let short = run_mann(&case.problem, &case.config, &noise).unwrap();
        case.config.n_max = n + 37;
        let long = run_mann(&case.problem, &case.config, &noise).unwrap();
        prop_assert_eq!(&short.states[..], &long.states[..n]);
    }

    #[test]
    fn product_bound_holds(n in 1u64..3000, frac in 0.0f64..1.0, a in 0.01f64..1.0, c in 0.0f64..0.99) {
        let i = (frac * n as f64) as u64;
        prop_assume!(i < n);
        let b = product_bound(i, n, a, c).unwrap();
        prop_assert!(b.exact <= b.bound * (1.0 + 1e-12), "{:?}", b);
    }

    #[test]
    fn weighted_sum_bound_holds(n in 1u64..2000, a in 0.01f64..1.0, c in 0.0f64..0.99) {
        let b = weighted_sum_bound(n, a, c).unwrap();
        prop_assert!(b.exact <= b.bound * (1.0 + 1e-12), "{:?}", b);
    }

    #[test]
    fn epsilon_decreases_eventually(n in 100u64..1_000_000, rho in 0.0f64..0.1) {
        let e1 = rate_epsilon(n, 0.5, 0.5, rho, 1.0).unwrap();
        let e2 = rate_epsilon(n * 10, 0.5, 0.5, rho, 1.0).unwrap();
        prop_assert!(e2 < e1);
    }

    #[test]
    fn fuk_nagaev_decreasing(l1 in 0.1f64..1e4, ratio in 1.001f64..10.0, r in 1.0f64..20.0, beta in 1.1f64..10.0, p in 2.1f64..50.0) {
        let fnk = FukNagaev { r, n: 1000.0, s_n_sq: 3.0, c_fn: 1.0, beta, p };
        prop_assert!(fnk.bound(l1 * ratio).unwrap() < fnk.bound(l1).unwrap());
    }

    #[test]
    fn config_round_trip(a in 0.05f64..1.0, x1 in 0.5f64..4.5, phi in -0.9f64..0.9, seed in 0u64..=i64::MAX as u64, n_max in 1usize..100_000, m in 1usize..1000) {
        let text = format!("[mann]\na = {a:?}\nx1 = {x1:?}\nn_max = {n_max}\n[noise]\nphi = {phi:?}\nseed = {seed}\n[ensemble]\nreplications = {m}\n");
        let cfg = RunConfig::from_toml_str(&text).unwrap();
        let again = RunConfig::from_toml_str(&cfg.to_toml_string().unwrap()).unwrap();
        prop_assert_eq!(&cfg, &again);
        prop_assert_eq!(cfg.mann.a, Some(a));
        prop_assert_eq!(cfg.noise.seed, Some(seed));
    }
}

#[test]
fn seeds_beyond_toml_range_fail_cleanly() {
    let mut cfg = RunConfig::default();
    cfg.noise.seed = Some(u64::MAX);
    assert!(cfg.to_toml_string().is_err());
    assert!(RunConfig::from_toml_str("[noise]\nseed = 18446744073709551615\n").is_err());
}
