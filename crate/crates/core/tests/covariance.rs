use stochastic_mann::montecarlo::{covariance_sum, covariance_weights};
use stochastic_mann::noise::{generate_noise_sequence, NoiseSpec};

/// Naive O(n² m) evaluation of the plug-in estimator from freshly drawn paths.
fn naive(spec: &NoiseSpec, n: usize, a: f64, c: f64, m: usize) -> (f64, f64) {
    let paths: Vec<Vec<f64>> = (0..m)
        .map(|k| generate_noise_sequence(&spec.with_stream(k as u64), n).unwrap().iter().map(|x| x.abs()).collect())
        .collect();
    let mean: Vec<f64> = (0..n).map(|i| paths.iter().map(|p| p[i]).sum::<f64>() / m as f64).collect();
    let s = a * (1.0 - c);
    let w: Vec<f64> = (1..=n)
        .map(|i| a * (n as f64).powf(s) / (i * i) as f64 * (i + 1..=n).map(|j| 1.0 - s / j as f64).product::<f64>())
        .collect();
    let (mut total, mut diag) = (0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            let cov = paths.iter().map(|p| (p[i] - mean[i]) * (p[k] - mean[k])).sum::<f64>() / (m - 1) as f64;
            let term = w[i] * w[k] * cov.abs();
            total += term;
            if i == k {
                diag += term;
            }
        }
    }
    (total, diag)
}

#[test]
fn weights_match_product_form() {
    let w = covariance_weights(30, 0.5, 0.2);
    let s = 0.4;
    for (idx, wi) in w.iter().enumerate() {
        let i = idx + 1;
        let want = 0.5 * 30f64.powf(s) / (i * i) as f64 * (i + 1..=30).map(|j| 1.0 - s / j as f64).product::<f64>();
        assert!((wi - want).abs() <= 1e-14 * want);
    }
}

#[test]
fn estimator_matches_naive_evaluation() {
    let spec = NoiseSpec::new(0.6, 1.0, 21).unwrap();
    let cs = covariance_sum(&spec, 40, 0.25, 0.5, 150).unwrap();
    let (total, diag) = naive(&spec, 40, 0.25, 0.5, 150);
    assert!((cs.total - total).abs() <= 1e-11 * total, "{} vs {total}", cs.total);
    assert!((cs.diagonal - diag).abs() <= 1e-11 * diag);
}

#[test]
fn independent_errors_diagonal_oracle() {
    // |g| for standard normal g has variance 1 - 2/π.
    let spec = NoiseSpec::new(0.0, 1.0, 5).unwrap();
    let (n, a, c) = (60, 0.25, 0.5);
    let cs = covariance_sum(&spec, n, a, c, 4000).unwrap();
    let sum_w2: f64 = covariance_weights(n, a, c).iter().map(|w| w * w).sum();
    let want = (1.0 - 2.0 / std::f64::consts::PI) * sum_w2;
    assert!((cs.diagonal / want - 1.0).abs() < 0.05, "{} vs {want}", cs.diagonal);
}

#[test]
fn correlated_errors_dominate_and_plateau() {
    let spec = NoiseSpec::new(0.8, 1.0, 13).unwrap();
    let totals: Vec<f64> = [100, 200, 400].iter().map(|&n| covariance_sum(&spec, n, 0.25, 0.5, 400).unwrap().total).collect();
    let iid = covariance_sum(&NoiseSpec::new(0.0, 1.0, 13).unwrap(), 100, 0.25, 0.5, 400).unwrap();
    assert!(totals[0] > iid.total, "{totals:?} vs {}", iid.total);
    // The sum grows with n but the increments shrink.
    assert!(totals[1] >= totals[0] && totals[2] >= totals[1], "{totals:?}");
    assert!(totals[2] - totals[1] < totals[1] - totals[0] + 0.1 * totals[0], "{totals:?}");
}

#[test]
fn too_few_replications_rejected() {
    assert!(covariance_sum(&NoiseSpec::new(0.5, 1.0, 1).unwrap(), 10, 0.25, 0.5, 50).is_err());
}
