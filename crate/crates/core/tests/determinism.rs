use stochastic_mann::cases::{golden_problem, kepler_problem};
use stochastic_mann::montecarlo::{run_replications, with_thread_count};

#[test]
fn ensembles_identical_across_thread_counts() {
    for case in [golden_problem(), kepler_problem()] {
        let mut config = case.config;
        config.n_max = 5000;
        let cps = [10, 100, 1000, 5000];
        let run = |t| with_thread_count(t, || run_replications(&case.problem, &config, &case.noise, 64, &cps)).unwrap().unwrap();
        let one = run(1);
        for t in [2, 3, 8] {
            assert_eq!(one, run(t), "{} with {t} threads", case.problem.name());
        }
    }
}

#[test]
fn replication_k_uses_stream_k() {
    let case = golden_problem();
    let mut config = case.config;
    config.n_max = 300;
    let ens = run_replications(&case.problem, &config, &case.noise, 5, &[300]).unwrap();
    for (k, s) in ens.summaries.iter().enumerate() {
        assert_eq!(s.stream_id, k as u64);
        let single = stochastic_mann::iteration::run_mann(&case.problem, &config, &case.noise.with_stream(k as u64)).unwrap();
        assert_eq!(s.values[0], single.last().x);
    }
}

#[test]
fn seeds_change_results() {
    let case = golden_problem();
    let mut config = case.config;
    config.n_max = 1000;
    let a = run_replications(&case.problem, &config, &case.noise.with_seed(1), 8, &[1000]).unwrap();
    let b = run_replications(&case.problem, &config, &case.noise.with_seed(2), 8, &[1000]).unwrap();
    assert_ne!(a.summaries[0].values, b.summaries[0].values);
}
