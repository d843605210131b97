//! AR(1) error sequences driven by Box-Muller Gaussians, and empirical
//! diagnostics for the tail and mixing hypotheses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Cosine branch of the Box-Muller transform: `sqrt(-2 ln u1) cos(2π u2)`.
///
/// `u1` must lie in (0, 1] and `u2` in [0, 1).
pub fn box_muller(u1: f64, u2: f64) -> Result<f64> {
    if !(u1 > 0.0 && u1 <= 1.0) {
        return Err(Error::param("u1", format!("{u1} not in (0, 1]")));
    }
    if !(0.0..1.0).contains(&u2) {
        return Err(Error::param("u2", format!("{u2} not in [0, 1)")));
    }
    Ok((-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos())
}

/// One AR(1) step `φ ξ + g`.
#[inline]
pub fn ar1_next(xi: f64, phi: f64, g: f64) -> f64 {
    phi * xi + g
}

/// Parameters of the AR(1) error process `ξ_{i+1} = φ ξ_i + s g_i`, `ξ_0 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub phi: f64,
    /// Standard-deviation multiplier `s` applied to each Gaussian innovation.
    pub innovation_scale: f64,
    pub seed: u64,
    #[serde(default)]
    pub stream: u64,
}

impl NoiseSpec {
    pub fn new(phi: f64, innovation_scale: f64, seed: u64) -> Result<Self> {
        let spec = Self { phi, innovation_scale, seed, stream: 0 };
        spec.check()?;
        Ok(spec)
    }

    /// Innovation scale zero: every ξ is exactly 0.
    pub fn silent() -> Self {
        Self { phi: 0.0, innovation_scale: 0.0, seed: 0, stream: 0 }
    }

    pub fn with_stream(mut self, stream: u64) -> Self {
        self.stream = stream;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn check(&self) -> Result<()> {
        if !(self.phi.abs() < 1.0) {
            return Err(Error::param("phi", format!("|phi| = {} must be < 1", self.phi.abs())));
        }
        if !(self.innovation_scale >= 0.0 && self.innovation_scale.is_finite()) {
            return Err(Error::param("innovation_scale", format!("{} must be finite and >= 0", self.innovation_scale)));
        }
        Ok(())
    }

    pub fn process(&self) -> NoiseProcess {
        NoiseProcess::new(self)
    }
}

/// Stateful generator yielding ξ_1, ξ_2, ... for a [`NoiseSpec`].
///
/// Each innovation consumes two uniforms from the stream, `u1` first (mapped
/// into (0, 1]) then `u2`; the sine companion of Box-Muller is discarded.
#[derive(Debug, Clone)]
pub struct NoiseProcess {
    rng: RngStream,
    phi: f64,
    scale: f64,
    state: f64,
}

impl NoiseProcess {
    pub fn new(spec: &NoiseSpec) -> Self {
        Self { rng: RngStream::new(spec.seed, spec.stream), phi: spec.phi, scale: spec.innovation_scale, state: 0.0 }
    }

    /// Next standard Gaussian from the underlying stream.
    #[inline]
    pub fn next_gaussian(&mut self) -> f64 {
        let u1 = self.rng.next_f64_open_closed();
        let u2 = self.rng.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    #[inline]
    pub fn next_xi(&mut self) -> f64 {
        let g = self.scale * self.next_gaussian();
        self.state = ar1_next(self.state, self.phi, g);
        self.state
    }
}

impl Iterator for NoiseProcess {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        Some(self.next_xi())
    }
}

/// ξ_1..ξ_n for `spec`; a prefix of any longer call with the same spec.
pub fn generate_noise_sequence(spec: &NoiseSpec, n: usize) -> Result<Vec<f64>> {
    spec.check()?;
    if n == 0 {
        return Err(Error::param("n", "must be >= 1"));
    }
    Ok(spec.process().take(n).collect())
}

/// Sup over `t_grid` of `t^p * P̂{|ξ| > t}` together with the per-point
/// ratios.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailDiagnostic {
    pub p: f64,
    pub t_grid: Vec<f64>,
    pub ratios: Vec<f64>,
    pub tail_ratio_sup: f64,
}

pub fn tail_diagnostic(samples: &[f64], p: f64, t_grid: &[f64]) -> Result<TailDiagnostic> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    if !(p > 2.0) {
        return Err(Error::param("p", format!("{p} must be > 2")));
    }
    if let Some(t) = t_grid.iter().find(|t| !(**t > 0.0)) {
        return Err(Error::param("t_grid", format!("{t} must be > 0")));
    }
    let mut abs: Vec<f64> = samples.iter().map(|x| x.abs()).collect();
    abs.sort_unstable_by(f64::total_cmp);
    let n = abs.len() as f64;
    let ratios: Vec<f64> = t_grid
        .iter()
        .map(|&t| {
            let not_above = abs.partition_point(|&v| v <= t);
            let frac = (abs.len() - not_above) as f64 / n;
            t.powf(p) * frac
        })
        .collect();
    let tail_ratio_sup = ratios.iter().copied().fold(0.0, f64::max);
    Ok(TailDiagnostic { p, t_grid: t_grid.to_vec(), ratios, tail_ratio_sup })
}

fn mean_and_variance(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var)
}

/// Sample autocorrelations at lags 0..=max_lag (lag 0 is 1).
pub fn empirical_autocorrelation(samples: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    if max_lag >= samples.len() {
        return Err(Error::param("max_lag", format!("{max_lag} must be smaller than the sample count {}", samples.len())));
    }
    let (mean, _) = mean_and_variance(samples);
    let centered: Vec<f64> = samples.iter().map(|x| x - mean).collect();
    let c0: f64 = centered.iter().map(|x| x * x).sum();
    if c0 == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((0..=max_lag)
        .map(|k| {
            if k == 0 {
                return 1.0;
            }
            let ck: f64 = centered[..centered.len() - k].iter().zip(&centered[k..]).map(|(a, b)| a * b).sum();
            ck / c0
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseDiagnostics {
    pub samples: usize,
    pub empirical_mean: f64,
    pub empirical_variance: f64,
    pub lag_autocorrelations: Vec<f64>,
    pub tail: TailDiagnostic,
}

/// Mean, variance, autocorrelations and tail ratios in one pass over the
/// caller's samples.
pub fn diagnose(samples: &[f64], max_lag: usize, p: f64, t_grid: &[f64]) -> Result<NoiseDiagnostics> {
    let tail = tail_diagnostic(samples, p, t_grid)?;
    let lag_autocorrelations = empirical_autocorrelation(samples, max_lag)?;
    let (empirical_mean, empirical_variance) = mean_and_variance(samples);
    Ok(NoiseDiagnostics { samples: samples.len(), empirical_mean, empirical_variance, lag_autocorrelations, tail })
}

/// Stationary variance `s² / (1 - φ²)` of the AR(1) process.
pub fn stationary_variance(phi: f64, innovation_scale: f64) -> f64 {
    innovation_scale * innovation_scale / (1.0 - phi * phi)
}
