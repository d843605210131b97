//! Command implementations behind the `mann` binary.
//!
//! Exit codes: 0 on success, 2 for configuration or hypothesis failures, 3 for
//! numerical failures during a run. Setting `MANN_THREADS` pins the worker
//! count used for replications.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{find_n_sigma_with, rate_epsilon, tail_terms_with, validate_hypotheses, FukNagaev, LipschitzPlan};
use crate::cases::reproduce_table;
use crate::config::{ResolvedRun, RunConfig};
use crate::error::Error;
use crate::iteration::run_mann_with;
use crate::montecarlo::with_thread_count;
use crate::noise::{diagnose, generate_noise_sequence, stationary_variance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

pub const THREADS_ENV: &str = "MANN_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "mann", version, about = "Stochastic Mann iteration under strongly mixing errors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML run configuration; defaults to the golden-ratio case.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides `noise.seed`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Overrides `ensemble.replications`.
    #[arg(long, global = true)]
    pub replications: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one stochastic Mann trace.
    Solve,
    /// Check hypotheses (H1)-(H5) and the rate window.
    Validate,
    /// Evaluate a theoretical bound.
    Bound {
        #[command(subcommand)]
        query: BoundQuery,
    },
    /// Reproduce a benchmark table over seeded replications.
    Bench {
        /// `golden` or `kepler`; defaults to the configured builtin.
        #[arg(long)]
        case: Option<String>,
        /// Two-column (n, median_error) series; defaults to `<out>.loglog.csv`.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Diagnostics of the configured error sequence.
    NoiseDiag {
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        max_lag: usize,
        /// Tail exponent for the t^p P{|ξ| > t} diagnostic; defaults to `bounds.p`.
        #[arg(long)]
        p: Option<f64>,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum BoundQuery {
    /// Radius √(1+δ)√(ln n)/n^{a(1-c)-ρ}.
    Epsilon { n: u64 },
    /// The three tail terms at n.
    Terms { n: u64 },
    /// Smallest n whose tail bound is at most sigma.
    NSigma {
        sigma: f64,
        #[arg(long, default_value_t = 1_000_000_000_000)]
        n_cap: u64,
    },
    /// Fuk-Nagaev bound at level lambda for n summands.
    FukNagaev { lambda: f64, n: u64 },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Run(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Run(e) if e.is_config_error() => EXIT_CONFIG,
            CliError::Failed(_) => EXIT_CONFIG,
            _ => EXIT_RUNTIME,
        }
    }
}

/// Full-precision rendering: 17 significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

fn load(cli: &Cli) -> Result<(RunConfig, ResolvedRun), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.noise.seed = Some(seed);
    }
    if let Some(m) = cli.replications {
        cfg.ensemble.replications = Some(m);
    }
    let run = cfg.resolve()?;
    Ok((cfg, run))
}

fn open_out<'a>(path: Option<&Path>, stdout: &'a mut dyn Write) -> io::Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(stdout),
    })
}

fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t > 0)
            .map(Some)
            .ok_or_else(|| Error::Config(format!("{THREADS_ENV}={v} is not a positive integer")).into()),
        Err(_) => Ok(None),
    }
}

/// Runs a parsed command line, writing to `--out` or `stdout`.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match threads_from_env()? {
        Some(t) => {
            // Buffer stdout so the pooled closure only captures Send data.
            let mut buf = Vec::new();
            let res = with_thread_count(t, || dispatch(cli, &mut buf))?;
            stdout.write_all(&buf)?;
            res
        }
        None => dispatch(cli, stdout),
    }
}

/// Parses `args`, runs, reports errors on stderr and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("mann: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Solve => cmd_solve(cli, stdout),
        Command::Validate => cmd_validate(cli, stdout),
        Command::Bound { query } => cmd_bound(cli, query, stdout),
        Command::Bench { case, plot } => cmd_bench(cli, case.as_deref(), plot.as_deref(), stdout),
        Command::NoiseDiag { samples, max_lag, p } => cmd_noise_diag(cli, *samples, *max_lag, *p, stdout),
    }
}

pub fn cmd_solve(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (_, run) = load(cli)?;
    let x_star = run.problem.known_fixed_point;
    let mut out = open_out(cli.out.as_deref(), stdout)?;
    let mut io_err = None;
    let mut rows = Vec::new();
    if cli.format == Format::Csv {
        writeln!(out, "n,x_n,xi_n{}", if x_star.is_some() { ",error" } else { "" })?;
    }
    let clamps = run_mann_with(&run.problem, &run.mann, &run.noise, |n, x, xi| {
        let err = x_star.map(|xs| (x - xs).abs());
        match cli.format {
            Format::Csv => {
                let mut line = format!("{n},{},{}", fmt_num(x), fmt_num(xi));
                if let Some(e) = err {
                    let _ = write!(line, ",{}", fmt_num(e));
                }
                if io_err.is_none() {
                    if let Err(e) = writeln!(out, "{line}") {
                        io_err = Some(e);
                    }
                }
            }
            Format::Json => rows.push(json!({ "n": n, "x": x, "xi": xi, "error": err })),
        }
    })?;
    if let Some(e) = io_err {
        return Err(e.into());
    }
    if cli.format == Format::Json {
        let doc = json!({
            "problem": run.problem.name(),
            "seed": run.noise.seed,
            "clamp_events": clamps,
            "rows": rows,
        });
        serde_json::to_writer(&mut out, &doc).map_err(io::Error::from)?;
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

pub fn cmd_validate(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    // Build the problem without the hard checks so failures are reported,
    // not raised.
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let run = match cfg.resolve() {
        Ok(run) => run,
        Err(Error::Hypothesis { .. }) | Err(Error::InvalidParameter { .. }) => {
            let mut relaxed = cfg.clone();
            relaxed.problem.contraction = Some(0.5);
            relaxed.mann.radius = Some(f64::MAX);
            let mut run = relaxed.resolve()?;
            run.problem.contraction = cfg.problem.contraction.unwrap_or(run.problem.contraction);
            run.mann.radius = cfg.mann.radius.unwrap_or(run.mann.radius);
            run
        }
        Err(e) => return Err(e.into()),
    };
    let report = validate_hypotheses(&run.problem, &run.mann, &run.params, &run.consts, &LipschitzPlan::default());
    let mut out = open_out(cli.out.as_deref(), stdout)?;
    match cli.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &report).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "hypothesis,status,measured,detail")?;
            for c in &report.checks {
                let measured = c.measured.iter().map(|(k, v)| format!("{k}={}", fmt_num(*v))).collect::<Vec<_>>().join(";");
                writeln!(out, "{},{},{},\"{}\"", c.name, c.status, measured, c.detail.replace('"', "'"))?;
            }
        }
    }
    out.flush()?;
    if report.any_failed() {
        let names: Vec<&str> = report.failed().map(|c| c.name.as_str()).collect();
        return Err(CliError::Failed(format!("failed checks: {}", names.join(", "))));
    }
    Ok(())
}

pub fn cmd_bound(cli: &Cli, query: &BoundQuery, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (_, run) = load(cli)?;
    let c = run.problem.contraction;
    let (header, values): (Vec<&str>, Vec<f64>) = match *query {
        BoundQuery::Epsilon { n } => {
            (vec!["n", "epsilon"], vec![n as f64, rate_epsilon(n, run.mann.a, c, run.params.rho, run.consts.delta)?])
        }
        BoundQuery::Terms { n } => {
            let t = tail_terms_with(n, &run.params, &run.consts, run.t3_form)?;
            (vec!["n", "t1", "t2", "t3", "total"], vec![n as f64, t.t1, t.t2, t.t3, t.total()])
        }
        BoundQuery::NSigma { sigma, n_cap } => {
            let n = find_n_sigma_with(sigma, &run.params, &run.consts, run.t3_form, n_cap)?;
            (vec!["sigma", "n_sigma"], vec![sigma, n as f64])
        }
        BoundQuery::FukNagaev { lambda, n } => {
            let s_n_sq = run.consts.s_n_sq.ok_or_else(|| Error::Config("fuk-nagaev needs bounds.s_n_sq".into()))?;
            let fnk =
                FukNagaev { r: run.consts.r, n: n as f64, s_n_sq, c_fn: run.consts.c_fn, beta: run.params.beta, p: run.params.p };
            (vec!["lambda", "n", "bound"], vec![lambda, n as f64, fnk.bound(lambda)?])
        }
    };
    let integral = |name: &str| matches!(name, "n" | "n_sigma");
    let mut out = open_out(cli.out.as_deref(), stdout)?;
    match cli.format {
        Format::Csv => {
            writeln!(out, "{}", header.join(","))?;
            let row: Vec<String> = header
                .iter()
                .zip(&values)
                .map(|(h, v)| if integral(h) { format!("{}", *v as u64) } else { fmt_num(*v) })
                .collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = header
                .iter()
                .zip(&values)
                .map(|(h, v)| {
                    let val = if integral(h) { json!(*v as u64) } else { json!(v) };
                    (h.to_string(), val)
                })
                .collect();
            serde_json::to_writer(&mut out, &map).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn default_plot_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.loglog.csv"))
}

pub fn cmd_bench(cli: &Cli, case: Option<&str>, plot: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (mut cfg, _) = load(cli)?;
    if let Some(name) = case {
        cfg.problem.builtin = Some(name.to_string());
        cfg.problem.expression = None;
    }
    let run = cfg.resolve()?;
    let mut bench_case = run.case.clone().ok_or_else(|| Error::Config("bench needs a builtin case (golden or kepler)".into()))?;
    bench_case.config = run.mann;
    bench_case.noise = run.noise;
    let table = reproduce_table(&bench_case, run.replications, run.noise.seed)?;

    let mut out = open_out(cli.out.as_deref(), stdout)?;
    match cli.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &table).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "n,median_error,reference_error,ratio,median_step_diff,reference_step_diff")?;
            for r in &table.rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.n,
                    fmt_num(r.median_error),
                    fmt_num(r.reference_error),
                    fmt_num(r.ratio),
                    fmt_opt(r.median_step_diff),
                    fmt_opt(r.reference_step_diff)
                )?;
            }
        }
    }
    out.flush()?;

    let plot_path = plot.map(Path::to_path_buf).or_else(|| cli.out.as_deref().map(default_plot_path));
    if let Some(path) = plot_path {
        let mut w = BufWriter::new(File::create(path)?);
        writeln!(w, "n,median_error")?;
        for r in &table.rows {
            writeln!(w, "{},{}", r.n, fmt_num(r.median_error))?;
        }
        w.flush()?;
    }
    Ok(())
}

pub fn cmd_noise_diag(cli: &Cli, samples: usize, max_lag: usize, p: Option<f64>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (_, run) = load(cli)?;
    let xi = generate_noise_sequence(&run.noise, samples)?;
    let t_grid: Vec<f64> = (0..=8).map(|k| 1.0 + 0.5 * k as f64).collect();
    let d = diagnose(&xi, max_lag, p.unwrap_or(run.params.p), &t_grid)?;
    let stationary = stationary_variance(run.noise.phi, run.noise.innovation_scale);
    let mut out = open_out(cli.out.as_deref(), stdout)?;
    match cli.format {
        Format::Json => {
            let doc = json!({ "diagnostics": d, "stationary_variance": stationary, "phi": run.noise.phi });
            serde_json::to_writer_pretty(&mut out, &doc).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "quantity,lag_or_t,value")?;
            writeln!(out, "samples,,{}", d.samples)?;
            writeln!(out, "mean,,{}", fmt_num(d.empirical_mean))?;
            writeln!(out, "variance,,{}", fmt_num(d.empirical_variance))?;
            writeln!(out, "stationary_variance,,{}", fmt_num(stationary))?;
            for (k, r) in d.lag_autocorrelations.iter().enumerate() {
                writeln!(out, "autocorrelation,{k},{}", fmt_num(*r))?;
                writeln!(out, "ar1_theory,{k},{}", fmt_num(run.noise.phi.powi(k as i32)))?;
            }
            for (t, r) in d.tail.t_grid.iter().zip(&d.tail.ratios) {
                writeln!(out, "tail_ratio,{t},{}", fmt_num(*r))?;
            }
            writeln!(out, "tail_ratio_sup,,{}", fmt_num(d.tail.tail_ratio_sup))?;
        }
    }
    out.flush()?;
    Ok(())
}
