use stochastic_mann::noise::{
    diagnose, empirical_autocorrelation, generate_noise_sequence, stationary_variance, tail_diagnostic, NoiseSpec,
};

fn gaussians(n: usize, seed: u64) -> Vec<f64> {
    let mut p = NoiseSpec::new(0.0, 1.0, seed).unwrap().process();
    (0..n).map(|_| p.next_gaussian()).collect()
}

#[test]
fn gaussian_moments() {
    let g = gaussians(1_000_000, 3);
    let d = diagnose(&g, 2, 3.0, &[1.0, 2.0]).unwrap();
    assert!(d.empirical_mean.abs() < 0.005);
    assert!((d.empirical_variance - 1.0).abs() < 0.01);
    assert!(d.lag_autocorrelations[1].abs() < 0.005);
    let fourth = g.iter().map(|x| x.powi(4)).sum::<f64>() / g.len() as f64;
    assert!((fourth - 3.0).abs() < 0.05, "kurtosis {fourth}");
}

#[test]
fn ar1_autocorrelation_follows_phi_powers() {
    for phi in [0.3, 0.7, 0.8] {
        let xi = generate_noise_sequence(&NoiseSpec::new(phi, 1.0, 11).unwrap(), 1_000_000).unwrap();
        let acf = empirical_autocorrelation(&xi, 4).unwrap();
        for (k, r) in acf.iter().enumerate() {
            assert!((r - phi.powi(k as i32)).abs() < 0.01, "phi {phi} lag {k}: {r}");
        }
        let var = xi.iter().map(|x| x * x).sum::<f64>() / xi.len() as f64;
        assert!((var / stationary_variance(phi, 1.0) - 1.0).abs() < 0.03, "phi {phi}: var {var}");
    }
}

#[test]
fn innovation_scale_scales_the_sequence() {
    let a = generate_noise_sequence(&NoiseSpec::new(0.5, 1.0, 9).unwrap(), 1000).unwrap();
    let b = generate_noise_sequence(&NoiseSpec::new(0.5, 2.5, 9).unwrap(), 1000).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((2.5 * x - y).abs() <= 1e-12 * y.abs().max(1.0));
    }
}

#[test]
fn gaussian_tail_ratio_against_exact_tail() {
    // 2(1 - Φ(t)) for t = 1..5.
    let exact = [0.31731050786291415, 0.04550026389635842, 0.0026997960632601866, 6.334248366623996e-05, 5.733031437583878e-07];
    let g = gaussians(1_000_000, 5);
    let grid = [1.0, 2.0, 3.0, 4.0, 5.0];
    let d = tail_diagnostic(&g, 3.0, &grid).unwrap();
    for ((t, r), e) in grid.iter().zip(&d.ratios).zip(exact) {
        let want = t * t * t * e;
        let tol = 4.0 * t * t * t * (e / 1e6).sqrt() + 1e-12;
        assert!((r - want).abs() < tol, "t {t}: {r} vs {want}");
    }
    assert!(d.tail_ratio_sup <= 1.05);
}
