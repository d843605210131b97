//! Sample statistics of the AR(1) error sequence: mean, variance against the
//! stationary value s²/(1 - φ²), autocorrelation against φ^k, and the tail
//! ratio t^p P{|ξ| > t}.

use stochastic_mann::noise::{diagnose, generate_noise_sequence, stationary_variance, NoiseSpec};

fn main() -> stochastic_mann::Result<()> {
    let n = 1_000_000;
    for phi in [0.0, 0.5, 0.8] {
        let spec = NoiseSpec::new(phi, 1.0, 42)?;
        let xi = generate_noise_sequence(&spec, n)?;
        let d = diagnose(&xi, 5, 4.0, &[1.0, 2.0, 3.0, 4.0])?;
        println!("phi = {phi}");
        println!("  mean      {:+.4}", d.empirical_mean);
        println!("  variance  {:.4} (stationary {:.4})", d.empirical_variance, stationary_variance(phi, 1.0));
        for (k, r) in d.lag_autocorrelations.iter().enumerate() {
            println!("  acf[{k}]    {r:+.4} (phi^k {:+.4})", phi.powi(k as i32));
        }
        println!("  sup_t t^4 P(|xi|>t) = {:.4}", d.tail.tail_ratio_sup);
    }
    Ok(())
}
