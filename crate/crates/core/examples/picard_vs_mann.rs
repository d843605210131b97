//! Plain Picard iteration against averaged Mann iteration, with and without
//! noise, on a user-supplied map.
//!
//! ```text
//! cargo run --example picard_vs_mann -- "cos(x)" 0.85 0 1
//! ```

use stochastic_mann::config::parse_map;
use stochastic_mann::iteration::{picard_run, run_mann, Domain, FixedPointProblem, MannConfig};
use stochastic_mann::noise::NoiseSpec;

fn main() -> stochastic_mann::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let expr = args.first().cloned().unwrap_or_else(|| "cos(x)".into());
    let num = |i: usize, d: f64| args.get(i).and_then(|s| s.parse().ok()).unwrap_or(d);
    let (c, lo, hi) = (num(1, 0.85), num(2, 0.0), num(3, 1.0));

    let problem = FixedPointProblem::new(expr.clone(), parse_map(&expr)?, c, Domain::new(lo, hi)?)?;
    let x1 = 0.5 * (lo + hi);
    let picard = picard_run(&problem, x1, 200)?;
    let x_ref = picard.last().x;
    println!("{expr}: Picard after 200 steps x = {x_ref:.15}");

    let config = MannConfig { a: 0.9, x1, radius: hi - lo, n_max: 100_000, clamp_to_domain: true };
    let clean = run_mann(&problem, &config, &NoiseSpec::silent())?;
    let noisy = run_mann(&problem, &config, &NoiseSpec::new(0.8, 1.0, 42)?)?;
    println!("{:>7} {:>12} {:>12} {:>12}", "n", "Picard", "Mann", "noisy Mann");
    for n in [10, 100, 1_000, 10_000, 100_000] {
        let p = picard.x(n.min(200)).map(|x| (x - x_ref).abs()).unwrap_or(0.0);
        println!(
            "{n:>7} {p:>12.3e} {:>12.3e} {:>12.3e}",
            (clean.x(n).unwrap() - x_ref).abs(),
            (noisy.x(n).unwrap() - x_ref).abs()
        );
    }
    println!("noisy run projected onto the domain {} times", noisy.clamp_events);
    Ok(())
}
