//! Hypothesis report for the default configuration and for a deliberately
//! broken one (c > 1).

use stochastic_mann::bounds::{validate_hypotheses, LipschitzPlan};
use stochastic_mann::config::RunConfig;

fn print(title: &str, cfg: &RunConfig) -> stochastic_mann::Result<()> {
    let run = cfg.resolve()?;
    let report = validate_hypotheses(&run.problem, &run.mann, &run.params, &run.consts, &LipschitzPlan::default());
    println!("{title}");
    for c in &report.checks {
        println!("  {:<7} {:<14} {}", c.name, c.status.to_string(), c.detail);
    }
    Ok(())
}

fn main() -> stochastic_mann::Result<()> {
    print("golden defaults", &RunConfig::default())?;

    let kepler = RunConfig::from_toml_str("[problem]\nbuiltin = \"kepler\"\n")?;
    print("\nkepler defaults", &kepler)?;

    let bad = RunConfig::from_toml_str("[problem]\nexpression = \"2*x\"\ncontraction = 1.2\ndomain = [0.0, 1.0]\n")?;
    match bad.resolve() {
        Ok(_) => println!("\nunexpected: c = 1.2 accepted"),
        Err(e) => println!("\nc = 1.2 rejected: {e} (config error: {})", e.is_config_error()),
    }
    Ok(())
}
