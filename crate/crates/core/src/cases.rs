//! The two benchmark problems: the golden ratio as the fixed point of
//! `sqrt(x + 1)` and Kepler's equation for Mercury's eccentric anomaly.
//!
//! Reference rows are the published single-run values, shipped under
//! `data/`. Those runs used an unpublished seed, so comparisons are made at
//! the level of medians over seeded replications.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iteration::{Domain, FixedPointProblem, MannConfig};
use crate::montecarlo::run_replications;
use crate::noise::NoiseSpec;

pub const GOLDEN_RATIO: f64 = 1.618033988749895;
pub const KEPLER_ECCENTRICITY: f64 = 0.20563069;
pub const KEPLER_MEAN_ANOMALY: f64 = 3.05076572;
/// Reference root of `E = M + e sin E` for Mercury.
pub const KEPLER_FIXED_POINT: f64 = 3.066244878640875;

pub const DEFAULT_SEED: u64 = 42;

const GOLDEN_CSV: &str = include_str!("../data/golden_reference.csv");
const KEPLER_CSV: &str = include_str!("../data/kepler_reference.csv");

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub n: usize,
    pub x_n: f64,
    /// `|x_n - x_{n-1}|`, reported for Kepler only.
    pub step_diff: Option<f64>,
    pub error: f64,
}

fn parse_reference(csv: &str) -> Vec<ReferenceRow> {
    csv.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            let num = |s: &str| s.parse::<f64>().expect("reference fixture holds numbers");
            ReferenceRow {
                n: f[0].parse().expect("reference fixture holds integer n"),
                x_n: num(f[1]),
                step_diff: (!f[2].is_empty()).then(|| num(f[2])),
                error: num(f[3]),
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct BenchmarkCase {
    pub problem: FixedPointProblem,
    pub config: MannConfig,
    pub noise: NoiseSpec,
    pub reference_rows: Vec<ReferenceRow>,
}

impl BenchmarkCase {
    /// Same case with innovation scale zero.
    pub fn zero_noise(&self) -> Self {
        let mut case = self.clone();
        case.noise.innovation_scale = 0.0;
        case
    }

    pub fn reference_checkpoints(&self) -> Vec<usize> {
        self.reference_rows.iter().map(|r| r.n).collect()
    }
}

/// `f(x) = sqrt(x + 1)` on [0, 5], `c = 1/2`, `x1 = 1.3`, `a = 1/4`, `φ = 0.8`.
pub fn golden_problem() -> BenchmarkCase {
    let problem = FixedPointProblem::new("golden", |x: f64| (x + 1.0).sqrt(), 0.5, Domain { lo: 0.0, hi: 5.0 })
        .and_then(|p| p.with_fixed_point(GOLDEN_RATIO))
        .expect("golden problem is well formed");
    let x1 = 1.3;
    BenchmarkCase {
        problem,
        config: MannConfig { a: 0.25, x1, radius: (GOLDEN_RATIO - x1).abs(), n_max: 100_000, clamp_to_domain: false },
        noise: NoiseSpec { phi: 0.8, innovation_scale: 1.0, seed: DEFAULT_SEED, stream: 0 },
        reference_rows: parse_reference(GOLDEN_CSV),
    }
}

/// `f(x) = M + e sin x` on [2, 4] with Mercury's `e` and `M`, `c = e`,
/// `x1 = 3`, `a = 0.9`, `φ = 0.7`.
pub fn kepler_problem() -> BenchmarkCase {
    let problem = FixedPointProblem::new(
        "kepler",
        |x: f64| KEPLER_MEAN_ANOMALY + KEPLER_ECCENTRICITY * x.sin(),
        KEPLER_ECCENTRICITY,
        Domain { lo: 2.0, hi: 4.0 },
    )
    .and_then(|p| p.with_fixed_point(KEPLER_FIXED_POINT))
    .expect("kepler problem is well formed");
    let x1 = 3.0;
    BenchmarkCase {
        problem,
        config: MannConfig { a: 0.9, x1, radius: (KEPLER_FIXED_POINT - x1).abs(), n_max: 100_000, clamp_to_domain: false },
        noise: NoiseSpec { phi: 0.7, innovation_scale: 1.0, seed: DEFAULT_SEED, stream: 0 },
        reference_rows: parse_reference(KEPLER_CSV),
    }
}

pub fn builtin(name: &str) -> Option<BenchmarkCase> {
    match name {
        "golden" => Some(golden_problem()),
        "kepler" => Some(kepler_problem()),
        _ => None,
    }
}

/// Planet position `(a(cos E - e), a sqrt(1 - e²) sin E)` on its ellipse.
pub fn orbital_position(semi_major_axis: f64, eccentricity: f64, eccentric_anomaly: f64) -> (f64, f64) {
    (
        semi_major_axis * (eccentric_anomaly.cos() - eccentricity),
        semi_major_axis * (1.0 - eccentricity * eccentricity).sqrt() * eccentric_anomaly.sin(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub median_error: f64,
    pub reference_error: f64,
    /// `median_error / reference_error`.
    pub ratio: f64,
    pub median_step_diff: Option<f64>,
    pub reference_step_diff: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkTable {
    pub case: String,
    pub replications: usize,
    pub seed: u64,
    pub rows: Vec<TableRow>,
}

impl BenchmarkTable {
    pub fn medians_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].median_error < w[0].median_error)
    }

    pub fn ratios_within(&self, lo: f64, hi: f64) -> bool {
        self.rows.iter().all(|r| (lo..=hi).contains(&r.ratio))
    }
}

/// Median `|x_n - x*|` over `m` seeded replications at every reference `n`.
pub fn reproduce_table(case: &BenchmarkCase, m: usize, seed: u64) -> Result<BenchmarkTable> {
    if m < 30 {
        return Err(Error::param("replications", format!("{m} < 30")));
    }
    let checkpoints = case.reference_checkpoints();
    let mut config = case.config;
    config.n_max = *checkpoints.last().ok_or_else(|| Error::Config("case has no reference rows".into()))?;
    let noise = case.noise.with_seed(seed);
    let ensemble = run_replications(&case.problem, &config, &noise, m, &checkpoints)?;
    let with_diffs = case.reference_rows.iter().any(|r| r.step_diff.is_some());
    let rows = case
        .reference_rows
        .iter()
        .map(|r| {
            let median_error = ensemble.median_error(r.n)?;
            Ok(TableRow {
                n: r.n,
                median_error,
                reference_error: r.error,
                ratio: median_error / r.error,
                median_step_diff: if with_diffs { ensemble.median_step_diff(r.n)? } else { None },
                reference_step_diff: r.step_diff,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BenchmarkTable { case: case.problem.name().to_string(), replications: m, seed, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_fixed_point_identity() {
        let case = golden_problem();
        assert!((case.problem.eval(GOLDEN_RATIO) - GOLDEN_RATIO).abs() < 1e-12);
        assert!((GOLDEN_RATIO * GOLDEN_RATIO - GOLDEN_RATIO - 1.0).abs() < 1e-12);
    }

    #[test]
    fn golden_reference_rows() {
        let rows = golden_problem().reference_rows;
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[2].n, 100_000);
        assert_eq!(rows[2].error, 0.001918072603423);
        assert!((rows[2].x_n + rows[2].error - GOLDEN_RATIO).abs() < 1e-15);
    }

    #[test]
    fn kepler_reference_rows() {
        let rows = kepler_problem().reference_rows;
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[2].error, 2.465128789985727e-7);
        assert_eq!(rows[0].step_diff, Some(5.084582991976561e-06));
        assert!(rows.windows(2).all(|w| w[0].n < w[1].n));
    }

    #[test]
    fn kepler_fixed_point_residual() {
        let case = kepler_problem();
        assert!((case.problem.eval(KEPLER_FIXED_POINT) - KEPLER_FIXED_POINT).abs() < 1e-9);
    }

    #[test]
    fn configs_are_valid() {
        for case in [golden_problem(), kepler_problem()] {
            case.config.check(&case.problem).unwrap();
            case.noise.check().unwrap();
        }
    }

    #[test]
    fn orbital_position_perihelion() {
        let (x, y) = orbital_position(1.0, 0.2, 0.0);
        assert!((x - 0.8).abs() < 1e-15 && y == 0.0);
    }

    #[test]
    fn too_few_replications() {
        assert!(reproduce_table(&golden_problem(), 29, 1).is_err());
    }
}
