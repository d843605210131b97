//! Stochastic Mann iteration for x = sqrt(x + 1) on [0, 5].
//!
//! Runs one seeded trace, then a small ensemble, and prints the error at the
//! reference checkpoints next to the noise-free run.
//!
//! ```text
//! cargo run --release --example golden_ratio -- [replications]
//! ```

use stochastic_mann::cases::{golden_problem, DEFAULT_SEED, GOLDEN_RATIO};
use stochastic_mann::iteration::run_mann;
use stochastic_mann::montecarlo::run_replications;

fn main() -> stochastic_mann::Result<()> {
    let m: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let case = golden_problem();
    let checkpoints = case.reference_checkpoints();

    let trace = run_mann(&case.problem, &case.config, &case.noise)?;
    let clean = run_mann(&case.problem, &case.config, &case.zero_noise().noise)?;
    println!("single trace, seed {DEFAULT_SEED}");
    println!("{:>8} {:>22} {:>12} {:>12}", "n", "x_n", "|x_n - x*|", "no noise");
    for &n in &checkpoints {
        let x = trace.x(n).expect("checkpoint within n_max");
        let x0 = clean.x(n).expect("checkpoint within n_max");
        println!("{n:>8} {x:>22.16} {:>12.3e} {:>12.3e}", (x - GOLDEN_RATIO).abs(), (x0 - GOLDEN_RATIO).abs());
    }

    let ensemble = run_replications(&case.problem, &case.config, &case.noise, m, &checkpoints)?;
    println!("\nmedian over {m} replications");
    for (row, (n, med)) in case.reference_rows.iter().zip(ensemble.median_errors()?) {
        println!("{n:>8} median {med:.3e}   reference table {:.3e}", row.error);
    }
    Ok(())
}
