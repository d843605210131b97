//! Checks the per-path error bound along a noisy golden-ratio trace.

use stochastic_mann::cases::golden_problem;
use stochastic_mann::iteration::{pathwise_error_bound, run_mann};

fn main() -> stochastic_mann::Result<()> {
    let mut case = golden_problem();
    case.config.n_max = 10_000;
    let trace = run_mann(&case.problem, &case.config, &case.noise)?;
    let bound = pathwise_error_bound(&trace, &case.problem, &case.config)?;
    for row in bound.rows.iter().filter(|r| [1, 10, 100, 1_000, 9_999].contains(&r.n)) {
        println!("n {:>5}: |x_(n+1) - x*| = {:.6e} <= {:.6e}", row.n, row.lhs, row.rhs);
    }
    println!("violations: {}, max(lhs - rhs) = {:.3e}", bound.violations(), bound.max_violation);
    Ok(())
}
