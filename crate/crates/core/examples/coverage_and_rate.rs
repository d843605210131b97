//! Empirical coverage of the rate radius and a log-log fit of the median
//! error, for both builtin cases.

use stochastic_mann::bounds::rate_epsilon;
use stochastic_mann::cases::{golden_problem, kepler_problem};
use stochastic_mann::config::RunConfig;
use stochastic_mann::montecarlo::{empirical_coverage, estimate_rate_slope, run_replications};

fn main() -> stochastic_mann::Result<()> {
    let m = 200;
    for case in [golden_problem(), kepler_problem()] {
        let name = case.problem.name().to_string();
        let mut cfg = RunConfig::default();
        cfg.problem.builtin = Some(name.clone());
        let run = cfg.resolve()?;
        let checkpoints = [1_000, 10_000, 100_000];
        let ens = run_replications(&case.problem, &case.config, &case.noise, m, &checkpoints)?;
        let x_star = case.problem.known_fixed_point.expect("builtin cases know x*");
        let slope = estimate_rate_slope(&ens, 1_000, 100_000)?;
        println!("{name}: a(1-c) = {:.4}, rho = {}", case.config.decay(&case.problem), run.params.rho);
        for &n in &checkpoints {
            let eps = rate_epsilon(n as u64, case.config.a, case.problem.contraction, run.params.rho, run.consts.delta)?;
            println!("  n {n:>6}: eps {eps:.4e}, coverage {:.3}", empirical_coverage(&ens, n, x_star, eps)?);
        }
        println!("  median-error slope {:.3}\n", slope.slope);
    }
    Ok(())
}
