//! Monte Carlo estimate of the weighted covariance sum of |ξ_i| for
//! independent and for strongly correlated errors.

use stochastic_mann::montecarlo::covariance_sum;
use stochastic_mann::noise::NoiseSpec;

fn main() -> stochastic_mann::Result<()> {
    let (a, c, m) = (0.25, 0.5, 400);
    for phi in [0.0, 0.8] {
        let spec = NoiseSpec::new(phi, 1.0, 7)?;
        println!("phi = {phi}");
        for n in [50, 100, 200, 400] {
            let cs = covariance_sum(&spec, n, a, c, m)?;
            println!(
                "  n {n:>4}: total {:+.4e}  diagonal {:.4e}  off-diagonal {:+.4e}",
                cs.total,
                cs.diagonal,
                cs.off_diagonal()
            );
        }
    }
    Ok(())
}
