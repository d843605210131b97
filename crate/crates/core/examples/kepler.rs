//! Mercury's eccentric anomaly from Kepler's equation E = M + e sin E,
//! solved as a fixed point with noisy evaluations of the right side.

use stochastic_mann::cases::{
    kepler_problem, orbital_position, reproduce_table, DEFAULT_SEED, KEPLER_ECCENTRICITY, KEPLER_FIXED_POINT,
};
use stochastic_mann::iteration::{picard_run, run_mann};

fn main() -> stochastic_mann::Result<()> {
    let case = kepler_problem();
    let picard = picard_run(&case.problem, case.config.x1, 60)?;
    println!("Picard limit      E = {:.15}", picard.last().x);
    println!("reference         E = {KEPLER_FIXED_POINT:.15}");

    let trace = run_mann(&case.problem, &case.config, &case.noise)?;
    let e = trace.last().x;
    println!("noisy Mann (n={})  E = {e:.15}, error {:.2e}", trace.len(), (e - KEPLER_FIXED_POINT).abs());

    let (x, y) = orbital_position(0.387098, KEPLER_ECCENTRICITY, e);
    println!("position in orbital plane: ({x:.6}, {y:.6}) AU");

    let table = reproduce_table(&case, 30, DEFAULT_SEED)?;
    println!("\n{:>8} {:>12} {:>12} {:>8}", "n", "median", "reference", "ratio");
    for r in &table.rows {
        println!("{:>8} {:>12.3e} {:>12.3e} {:>8.2}", r.n, r.median_error, r.reference_error, r.ratio);
    }
    Ok(())
}
