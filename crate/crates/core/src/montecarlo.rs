//! Seeded replication of Mann runs and the statistics computed on top of them.
//!
//! Replication `k` always draws its errors from stream `k` of the template's
//! seed, and results land in slot `k`, so an [`EnsembleResult`] does not
//! depend on how many worker threads produced it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iteration::{run_mann_with, FixedPointProblem, MannConfig};
use crate::noise::NoiseSpec;

/// Minimum replication count accepted by [`estimate_covariance_sum`].
pub const MIN_COVARIANCE_REPLICATIONS: usize = 100;

/// Decade checkpoints `10^2 .. 10^5`.
pub const DEFAULT_CHECKPOINTS: [usize; 4] = [100, 1_000, 10_000, 100_000];

/// Runs `f` on a dedicated pool of `threads` workers.
pub fn with_thread_count<T, F>(threads: usize, f: F) -> Result<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("cannot build a {threads}-thread pool: {e}")))?;
    Ok(pool.install(f))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationSummary {
    pub stream_id: u64,
    /// `x_n` at each checkpoint.
    pub values: Vec<f64>,
    /// `|x_n - x*|` at each checkpoint when the fixed point is known.
    pub errors: Option<Vec<f64>>,
    /// `|x_n - x_{n-1}|` at each checkpoint (`None` at n = 1).
    pub step_diffs: Vec<Option<f64>>,
    pub clamp_events: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleResult {
    pub seed: u64,
    pub replications: usize,
    pub checkpoints: Vec<usize>,
    pub x_star: Option<f64>,
    pub summaries: Vec<ReplicationSummary>,
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_unstable_by(f64::total_cmp);
    let m = values.len();
    if m % 2 == 1 {
        values[m / 2]
    } else {
        0.5 * (values[m / 2 - 1] + values[m / 2])
    }
}

impl EnsembleResult {
    pub fn checkpoint_index(&self, n: usize) -> Result<usize> {
        self.checkpoints.binary_search(&n).map_err(|_| Error::UnknownCheckpoint(n))
    }

    /// `x_n` across replications, in replication order.
    pub fn values_at(&self, n: usize) -> Result<Vec<f64>> {
        let k = self.checkpoint_index(n)?;
        Ok(self.summaries.iter().map(|s| s.values[k]).collect())
    }

    /// `|x_n - x_star|` across replications.
    pub fn errors_at(&self, n: usize, x_star: f64) -> Result<Vec<f64>> {
        Ok(self.values_at(n)?.into_iter().map(|x| (x - x_star).abs()).collect())
    }

    fn require_x_star(&self) -> Result<f64> {
        self.x_star.ok_or_else(|| Error::Unsupported("ensemble has no known fixed point".into()))
    }

    pub fn median_error(&self, n: usize) -> Result<f64> {
        let x_star = self.require_x_star()?;
        Ok(median(&mut self.errors_at(n, x_star)?))
    }

    /// `(n, median |x_n - x*|)` at every checkpoint.
    pub fn median_errors(&self) -> Result<Vec<(usize, f64)>> {
        self.checkpoints.iter().map(|&n| Ok((n, self.median_error(n)?))).collect()
    }

    /// Median of `|x_n - x_{n-1}|`, `None` at n = 1.
    pub fn median_step_diff(&self, n: usize) -> Result<Option<f64>> {
        let k = self.checkpoint_index(n)?;
        let mut diffs: Vec<f64> = self.summaries.iter().filter_map(|s| s.step_diffs[k]).collect();
        if diffs.is_empty() {
            return Ok(None);
        }
        Ok(Some(median(&mut diffs)))
    }

    pub fn total_clamp_events(&self) -> usize {
        self.summaries.iter().map(|s| s.clamp_events).sum()
    }
}

fn check_checkpoints(checkpoints: &[usize], n_max: usize) -> Result<()> {
    if checkpoints.is_empty() {
        return Err(Error::param("checkpoints", "at least one checkpoint is required"));
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("checkpoints", "must be strictly increasing"));
    }
    if checkpoints[0] < 1 || *checkpoints.last().unwrap() > n_max {
        return Err(Error::param("checkpoints", format!("must lie in [1, n_max = {n_max}]")));
    }
    Ok(())
}

/// Runs `m` replications on the current rayon pool.
pub fn run_replications(
    problem: &FixedPointProblem,
    config: &MannConfig,
    noise_template: &NoiseSpec,
    m: usize,
    checkpoints: &[usize],
) -> Result<EnsembleResult> {
    if m == 0 {
        return Err(Error::param("replications", "must be >= 1"));
    }
    config.check(problem)?;
    noise_template.check()?;
    check_checkpoints(checkpoints, config.n_max)?;

    let x_star = problem.known_fixed_point;
    let outcomes: Vec<Result<ReplicationSummary>> = (0..m)
        .into_par_iter()
        .map(|k| {
            let stream_id = k as u64;
            let noise = noise_template.with_stream(stream_id);
            let mut values = Vec::with_capacity(checkpoints.len());
            let mut step_diffs = Vec::with_capacity(checkpoints.len());
            let mut next = 0;
            let mut prev = f64::NAN;
            let clamp_events = run_mann_with(problem, config, &noise, |n, x, _| {
                if next < checkpoints.len() && checkpoints[next] == n {
                    values.push(x);
                    step_diffs.push((n > 1).then(|| (x - prev).abs()));
                    next += 1;
                }
                prev = x;
            })
            .map_err(|e| Error::Replication { index: k, source: Box::new(e) })?;
            let errors = x_star.map(|xs| values.iter().map(|x| (x - xs).abs()).collect());
            Ok(ReplicationSummary { stream_id, values, errors, step_diffs, clamp_events })
        })
        .collect();

    let summaries = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(EnsembleResult { seed: noise_template.seed, replications: m, checkpoints: checkpoints.to_vec(), x_star, summaries })
}

/// Fraction of replications with `|x_n - x_star| <= eps`.
pub fn empirical_coverage(ensemble: &EnsembleResult, n: usize, x_star: f64, eps: f64) -> Result<f64> {
    if eps.is_nan() || eps < 0.0 {
        return Err(Error::param("eps", format!("{eps} must be >= 0")));
    }
    let errors = ensemble.errors_at(n, x_star)?;
    let inside = errors.iter().filter(|&&e| e <= eps).count();
    Ok(inside as f64 / errors.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
}

/// Least-squares line through `(ln n, ln e)`.
pub fn fit_log_log(points: &[(f64, f64)]) -> Result<LogLogFit> {
    if points.len() < 3 {
        return Err(Error::DegenerateFit(format!("{} points; at least 3 needed", points.len())));
    }
    if let Some(&(n, e)) = points.iter().find(|(n, e)| !(*n > 0.0 && *e > 0.0)) {
        return Err(Error::DegenerateFit(format!("non-positive value at n = {n}: {e}")));
    }
    let k = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    Ok(LogLogFit { slope, intercept: my - slope * mx })
}

/// Log-log fit of the median error over the checkpoints in `[n_lo, n_hi]`.
pub fn estimate_rate_slope(ensemble: &EnsembleResult, n_lo: usize, n_hi: usize) -> Result<LogLogFit> {
    let points = ensemble
        .median_errors()?
        .into_iter()
        .filter(|(n, _)| (n_lo..=n_hi).contains(n))
        .map(|(n, e)| (n as f64, e))
        .collect::<Vec<_>>();
    fit_log_log(&points)
}

/// Weights `a n^s / i² ∏_{j=i+1}^{n} (1 - s/j)` for `i = 1..=n`.
pub fn covariance_weights(n: usize, a: f64, c: f64) -> Vec<f64> {
    let s = a * (1.0 - c);
    let scale = a * (n as f64).powf(s);
    let mut w = vec![0.0; n];
    let mut tail = 1.0;
    for i in (1..=n).rev() {
        let x = i as f64;
        w[i - 1] = scale / (x * x) * tail;
        tail *= 1.0 - s / x;
    }
    w
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovarianceSum {
    /// `Σ_i Σ_k |Cov(Z_i, Z_k)|`.
    pub total: f64,
    /// `Σ_i Var(Z_i)`.
    pub diagonal: f64,
}

impl CovarianceSum {
    pub fn off_diagonal(&self) -> f64 {
        self.total - self.diagonal
    }
}

/// `|ξ_i|` for i = 1..=n on `m` streams, as columns indexed by `i`.
pub fn abs_noise_columns(noise: &NoiseSpec, n: usize, m: usize) -> Result<Vec<Vec<f64>>> {
    noise.check()?;
    let paths: Vec<Vec<f64>> =
        (0..m).into_par_iter().map(|k| noise.with_stream(k as u64).process().take(n).map(f64::abs).collect()).collect();
    Ok((0..n).map(|i| paths.iter().map(|p| p[i]).collect()).collect())
}

/// Plug-in estimate of `s_n² = Σ_i Σ_k |Cov(Z_i, Z_k)|` with
/// `Z_i = w_i (|ξ_i| - E|ξ_i|)` (see [`covariance_weights`]). `E|ξ_i|` and the
/// covariances are the cross-replication sample moments (divisor `m - 1`).
pub fn covariance_sum(noise: &NoiseSpec, n: usize, a: f64, c: f64, m: usize) -> Result<CovarianceSum> {
    if m < MIN_COVARIANCE_REPLICATIONS {
        return Err(Error::param(
            "replications",
            format!("{m} < {MIN_COVARIANCE_REPLICATIONS} paths cannot support covariance estimates"),
        ));
    }
    if n == 0 {
        return Err(Error::param("n", "must be >= 1"));
    }
    let s = a * (1.0 - c);
    if !(a > 0.0 && (0.0..1.0).contains(&s)) {
        return Err(Error::param("a(1-c)", format!("{s} must lie in [0, 1) with a > 0")));
    }
    let mut cols = abs_noise_columns(noise, n, m)?;
    for col in cols.iter_mut() {
        let mean = col.iter().sum::<f64>() / m as f64;
        col.iter_mut().for_each(|v| *v -= mean);
    }
    let w = covariance_weights(n, a, c);
    let denom = (m - 1) as f64;
    let rows: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let diag = w[i] * w[i] * cols[i].iter().map(|v| v * v).sum::<f64>() / denom;
            let off: f64 = (i + 1..n)
                .map(|k| {
                    let cov = cols[i].iter().zip(&cols[k]).map(|(x, y)| x * y).sum::<f64>() / denom;
                    w[i] * w[k] * cov.abs()
                })
                .sum();
            (diag, off)
        })
        .collect();
    let diagonal: f64 = rows.iter().map(|r| r.0).sum();
    let off: f64 = rows.iter().map(|r| r.1).sum();
    Ok(CovarianceSum { total: diagonal + 2.0 * off, diagonal })
}

pub fn estimate_covariance_sum(noise: &NoiseSpec, n: usize, a: f64, c: f64, m: usize) -> Result<f64> {
    covariance_sum(noise, n, a, c, m).map(|s| s.total)
}
