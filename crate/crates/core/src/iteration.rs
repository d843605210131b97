//! Picard and stochastic Mann iterations for a contractive real map.
//!
//! The Mann update with step sequences `a_n = b_n = a/n`, `c_n = a/n²` is
//!
//! ```text
//! x_{n+1} = (1 - a/n) x_n + (a/n) [ f(x_n) + ξ_n / n ]
//! ```
//!
//! starting from `x_1` at `n = 1`, where `ξ_n` is the n-th state of the
//! error process (`ξ_0 = 0`).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise::NoiseSpec;

/// Absolute slack used when comparing a computed bound with an observed error.
pub const BOUND_SLACK: f64 = 1e-12;

pub type MapFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::param("domain", format!("[{lo}, {hi}] is not a proper interval")));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// A real map `f` on a closed interval with declared contraction constant `c`.
#[derive(Clone)]
pub struct FixedPointProblem {
    name: String,
    map: MapFn,
    pub contraction: f64,
    pub domain: Domain,
    pub known_fixed_point: Option<f64>,
}

impl fmt::Debug for FixedPointProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FixedPointProblem")
            .field("name", &self.name)
            .field("contraction", &self.contraction)
            .field("domain", &self.domain)
            .field("known_fixed_point", &self.known_fixed_point)
            .finish_non_exhaustive()
    }
}

impl FixedPointProblem {
    /// The contraction constant is only required to be finite here; whether it
    /// lies in (0, 1) is checked by [`FixedPointProblem::check_contraction`]
    /// so that hypothesis reports can describe a failing problem.
    pub fn new<F>(name: impl Into<String>, f: F, contraction: f64, domain: Domain) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !contraction.is_finite() {
            return Err(Error::param("contraction", "must be finite"));
        }
        Ok(Self { name: name.into(), map: Arc::new(f), contraction, domain, known_fixed_point: None })
    }

    /// Attach a known fixed point; rejects values with `|f(x*) - x*| > 1e-12 max(1, |x*|)`.
    pub fn with_fixed_point(mut self, x_star: f64) -> Result<Self> {
        let residual = (self.eval(x_star) - x_star).abs();
        if !(residual <= 1e-12 * x_star.abs().max(1.0)) {
            return Err(Error::param("known_fixed_point", format!("|f(x*) - x*| = {residual:e} at x* = {x_star}")));
        }
        self.known_fixed_point = Some(x_star);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.map)(x)
    }

    pub fn check_contraction(&self) -> Result<()> {
        let c = self.contraction;
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::hypothesis("H2", format!("contraction constant c = {c} must lie in (0, 1)")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MannConfig {
    /// Step constant `a`.
    pub a: f64,
    pub x1: f64,
    /// A-priori radius `N >= |x1 - x*|`.
    pub radius: f64,
    pub n_max: usize,
    #[serde(default)]
    pub clamp_to_domain: bool,
}

impl MannConfig {
    /// The decay exponent `a(1 - c)`.
    pub fn decay(&self, problem: &FixedPointProblem) -> f64 {
        self.a * (1.0 - problem.contraction)
    }

    pub fn check(&self, problem: &FixedPointProblem) -> Result<()> {
        problem.check_contraction()?;
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::param("a", format!("{} must be finite and > 0", self.a)));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::param("radius", format!("N = {} must be finite and > 0", self.radius)));
        }
        if self.n_max == 0 {
            return Err(Error::param("n_max", "must be >= 1"));
        }
        if !problem.domain.contains(self.x1) {
            return Err(Error::param("x1", format!("{} outside [{}, {}]", self.x1, problem.domain.lo, problem.domain.hi)));
        }
        let s = self.decay(problem);
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::param("a", format!("a(1-c) = {s} must lie in (0, 1)")));
        }
        if let Some(x_star) = problem.known_fixed_point {
            let d = (self.x1 - x_star).abs();
            if d > self.radius {
                return Err(Error::hypothesis("H1", format!("|x1 - x*| = {d} exceeds N = {}", self.radius)));
            }
        }
        Ok(())
    }
}

/// One recorded iterate: `x_n` and the error `ξ_n` applied when stepping from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub n: usize,
    pub x: f64,
    pub xi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    /// `x_1 .. x_{n_max}`; `states[k].n == k + 1`. The last entry's `xi` was
    /// drawn but not applied.
    pub states: Vec<State>,
    /// `|x_n - x*|` per state when the fixed point is known.
    pub recorded_errors: Option<Vec<f64>>,
    pub clamp_events: usize,
}

impl IterationTrace {
    fn new(states: Vec<State>, x_star: Option<f64>, clamp_events: usize) -> Self {
        let recorded_errors = x_star.map(|xs| states.iter().map(|s| (s.x - xs).abs()).collect());
        Self { states, recorded_errors, clamp_events }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn last(&self) -> &State {
        self.states.last().expect("traces hold at least one state")
    }

    /// `x_n` for 1-based `n`.
    pub fn x(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|k| self.states.get(k)).map(|s| s.x)
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        self.states.iter().map(|s| s.x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub value: f64,
    pub clamped: bool,
}

/// The Mann update from `x_n` with error `ξ_n`.
#[inline]
pub fn mann_step(x: f64, n: usize, problem: &FixedPointProblem, config: &MannConfig, xi: f64) -> Result<Step> {
    if !(x.is_finite() && xi.is_finite()) {
        return Err(Error::InvalidState { step: n, x, xi });
    }
    if n == 0 {
        return Err(Error::param("n", "iteration index starts at 1"));
    }
    let w = config.a / n as f64;
    let next = (1.0 - w) * x + w * (problem.eval(x) + xi / n as f64);
    if !next.is_finite() {
        return Err(Error::InvalidState { step: n, x: next, xi });
    }
    if config.clamp_to_domain && !problem.domain.contains(next) {
        return Ok(Step { value: problem.domain.clamp(next), clamped: true });
    }
    Ok(Step { value: next, clamped: false })
}

/// Runs the stochastic recursion, calling `visit(n, x_n, ξ_n)` for every
/// `n = 1..=n_max` without materialising the trace. Returns the clamp count.
pub fn run_mann_with<V>(problem: &FixedPointProblem, config: &MannConfig, noise: &NoiseSpec, mut visit: V) -> Result<usize>
where
    V: FnMut(usize, f64, f64),
{
    config.check(problem)?;
    noise.check()?;
    if config.a > 1.0 {
        log::warn!("a = {} > 1: the coefficient 1 - a/n is negative for n < {}", config.a, config.a.ceil());
    }
    let mut process = noise.process();
    let mut x = config.x1;
    let mut clamps = 0;
    for n in 1..=config.n_max {
        let xi = process.next_xi();
        visit(n, x, xi);
        if n < config.n_max {
            let step = mann_step(x, n, problem, config, xi)?;
            clamps += usize::from(step.clamped);
            x = step.value;
        }
    }
    Ok(clamps)
}

pub fn run_mann(problem: &FixedPointProblem, config: &MannConfig, noise: &NoiseSpec) -> Result<IterationTrace> {
    let mut states = Vec::with_capacity(config.n_max);
    let clamps = run_mann_with(problem, config, noise, |n, x, xi| states.push(State { n, x, xi }))?;
    Ok(IterationTrace::new(states, problem.known_fixed_point, clamps))
}

/// Successive substitution `x_{k+1} = f(x_k)`; `n` states from `x1`.
pub fn picard_run(problem: &FixedPointProblem, x1: f64, n: usize) -> Result<IterationTrace> {
    if n == 0 {
        return Err(Error::param("n", "must be >= 1"));
    }
    let d = problem.domain;
    if !d.contains(x1) {
        return Err(Error::DomainEscape { step: 1, value: x1, lo: d.lo, hi: d.hi });
    }
    let mut states = Vec::with_capacity(n);
    let mut x = x1;
    for k in 1..=n {
        states.push(State { n: k, x, xi: 0.0 });
        if k == n {
            break;
        }
        let next = problem.eval(x);
        if !next.is_finite() {
            return Err(Error::InvalidState { step: k + 1, x: next, xi: 0.0 });
        }
        if !d.contains(next) {
            return Err(Error::DomainEscape { step: k + 1, value: next, lo: d.lo, hi: d.hi });
        }
        x = next;
    }
    Ok(IterationTrace::new(states, problem.known_fixed_point, 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub n: usize,
    /// `|x_{n+1} - x*|`.
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathwiseBound {
    pub rows: Vec<BoundRow>,
    /// `max(lhs - rhs)`; nonpositive when the bound holds everywhere.
    pub max_violation: f64,
}

impl PathwiseBound {
    /// Rows with `lhs > rhs + BOUND_SLACK`.
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.lhs > r.rhs + BOUND_SLACK).count()
    }
}

/// Evaluates, for every step of an unclamped trace,
///
/// ```text
/// |x_{n+1} - x*| <= N ∏_{i<=n} (1 - s/i) + Σ_{i<=n} (a/i²) ∏_{i<j<=n} (1 - s/j) |ξ_i|,   s = a(1-c)
/// ```
///
/// using the ξ values stored in the trace. The right side is accumulated as
/// `R_n = (1 - s/n) R_{n-1} + (a/n²)|ξ_n|` with `R_0 = N`.
pub fn pathwise_error_bound(trace: &IterationTrace, problem: &FixedPointProblem, config: &MannConfig) -> Result<PathwiseBound> {
    let x_star =
        problem.known_fixed_point.ok_or_else(|| Error::Unsupported("pathwise bound needs a known fixed point".into()))?;
    if trace.clamp_events > 0 {
        return Err(Error::BoundNotApplicable(format!("trace was projected onto the domain {} times", trace.clamp_events)));
    }
    let s = config.decay(problem);
    let a = config.a;
    let mut rhs = config.radius;
    let mut rows = Vec::with_capacity(trace.len().saturating_sub(1));
    let mut max_violation = f64::NEG_INFINITY;
    for pair in trace.states.windows(2) {
        let (cur, next) = (pair[0], pair[1]);
        let n = cur.n as f64;
        rhs = (1.0 - s / n) * rhs + a / (n * n) * cur.xi.abs();
        let lhs = (next.x - x_star).abs();
        max_violation = max_violation.max(lhs - rhs);
        rows.push(BoundRow { n: cur.n, lhs, rhs });
    }
    Ok(PathwiseBound { rows, max_violation })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn golden() -> FixedPointProblem {
        FixedPointProblem::new("golden", |x: f64| (x + 1.0).sqrt(), 0.5, Domain::new(0.0, 5.0).unwrap())
            .unwrap()
            .with_fixed_point((1.0 + 5f64.sqrt()) / 2.0)
            .unwrap()
    }

    fn kepler() -> FixedPointProblem {
        FixedPointProblem::new("kepler", |x: f64| 3.05076572 + 0.20563069 * x.sin(), 0.20563069, Domain::new(2.0, 4.0).unwrap())
            .unwrap()
    }

    fn golden_config(n_max: usize) -> MannConfig {
        MannConfig { a: 0.25, x1: 1.3, radius: (1.0 + 5f64.sqrt()) / 2.0 - 1.3, n_max, clamp_to_domain: false }
    }

    #[test]
    fn picard_fixed_point_is_invariant() {
        let t = picard_run(&golden(), 1.618033988749895, 5).unwrap();
        assert_eq!(t.len(), 5);
        assert!(t.xs().all(|x| (x - 1.618033988749895).abs() < 1e-12));
    }

    #[test]
    fn picard_golden_converges() {
        let t = picard_run(&golden(), 1.3, 40).unwrap();
        assert!(t.recorded_errors.as_ref().unwrap().last().unwrap() < &1e-10);
    }

    #[test]
    fn picard_kepler_reaches_reference() {
        let t = picard_run(&kepler(), 3.0, 60).unwrap();
        assert!((t.last().x - 3.066244878640875).abs() < 1e-9);
    }

    #[test]
    fn picard_reports_escape_step() {
        let p = FixedPointProblem::new("shift", |x: f64| 0.5 * x + 3.0, 0.5, Domain::new(0.0, 5.0).unwrap()).unwrap();
        // 0 -> 3 -> 4.5 -> 5.25
        match picard_run(&p, 0.0, 10) {
            Err(Error::DomainEscape { step, .. }) => assert_eq!(step, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mann_step_identity_map_is_stationary() {
        let p = FixedPointProblem::new("id", |x| x, 0.5, Domain::new(-10.0, 10.0).unwrap()).unwrap();
        for &(x, a, n) in &[(1.5, 0.3, 1), (-7.0, 0.9, 12), (0.0, 0.5, 1000)] {
            let cfg = MannConfig { a, x1: 0.0, radius: 1.0, n_max: 2, clamp_to_domain: false };
            let step = mann_step(x, n, &p, &cfg, 0.0).unwrap();
            assert!((step.value - x).abs() <= 1e-15 * x.abs().max(1.0));
        }
    }

    #[test]
    fn mann_step_golden_first_step() {
        let x2 = mann_step(1.3, 1, &golden(), &golden_config(2), 0.0).unwrap().value;
        assert!((x2 - 1.3541437722025775).abs() < 1e-15);
    }

    #[test]
    fn mann_step_kepler_first_step() {
        let cfg = MannConfig { a: 0.9, x1: 3.0, radius: 0.1, n_max: 2, clamp_to_domain: false };
        let x2 = mann_step(3.0, 1, &kepler(), &cfg, 0.0).unwrap().value;
        assert!((x2 - 3.0718058921671405).abs() < 1e-14);
    }

    #[test]
    fn mann_step_rejects_non_finite() {
        let cfg = golden_config(2);
        assert!(matches!(mann_step(f64::NAN, 1, &golden(), &cfg, 0.0), Err(Error::InvalidState { .. })));
        assert!(matches!(mann_step(1.0, 3, &golden(), &cfg, f64::INFINITY), Err(Error::InvalidState { step: 3, .. })));
    }

    #[test]
    fn mann_step_clamps_when_enabled() {
        let mut cfg = golden_config(2);
        cfg.clamp_to_domain = true;
        let s = mann_step(4.9, 1, &golden(), &cfg, 1e6).unwrap();
        assert!(s.clamped);
        assert_eq!(s.value, 5.0);
        cfg.clamp_to_domain = false;
        let s = mann_step(4.9, 1, &golden(), &cfg, 1e6).unwrap();
        assert!(!s.clamped && s.value > 5.0);
    }

    #[test]
    fn config_checks_name_the_hypothesis() {
        let mut cfg = golden_config(10);
        cfg.radius = 0.1;
        assert!(matches!(cfg.check(&golden()), Err(Error::Hypothesis { hypothesis: "H1", .. })));
        let mut p = golden();
        p.contraction = 1.2;
        assert!(matches!(golden_config(10).check(&p), Err(Error::Hypothesis { hypothesis: "H2", .. })));
        let mut cfg = golden_config(10);
        cfg.a = 3.0;
        assert!(cfg.check(&golden()).is_err());
        let mut cfg = golden_config(10);
        cfg.x1 = 6.0;
        assert!(cfg.check(&golden()).is_err());
    }

    #[test]
    fn silent_noise_matches_deterministic_recursion() {
        let cfg = golden_config(500);
        let t = run_mann(&golden(), &cfg, &NoiseSpec::silent()).unwrap();
        let mut x = 1.3f64;
        for s in &t.states {
            assert_eq!(s.x, x);
            assert_eq!(s.xi, 0.0);
            let n = s.n as f64;
            x = (1.0 - 0.25 / n) * x + 0.25 / n * (x + 1.0).sqrt();
        }
    }

    #[test]
    fn pathwise_bound_first_step() {
        let t = run_mann(&golden(), &golden_config(2), &NoiseSpec::silent()).unwrap();
        let b = pathwise_error_bound(&t, &golden(), &golden_config(2)).unwrap();
        assert_eq!(b.rows.len(), 1);
        assert!((b.rows[0].lhs - 0.26389021654731732).abs() < 1e-15);
        assert!((b.rows[0].rhs - 0.27827974015615799).abs() < 1e-15);
        assert_eq!(b.violations(), 0);
    }

    #[test]
    fn pathwise_bound_needs_fixed_point_and_no_clamps() {
        let cfg = MannConfig { a: 0.9, x1: 3.0, radius: 0.1, n_max: 10, clamp_to_domain: false };
        let t = run_mann(&kepler(), &cfg, &NoiseSpec::silent()).unwrap();
        assert!(matches!(pathwise_error_bound(&t, &kepler(), &cfg), Err(Error::Unsupported(_))));

        let mut t = run_mann(&golden(), &golden_config(10), &NoiseSpec::silent()).unwrap();
        t.clamp_events = 1;
        assert!(matches!(pathwise_error_bound(&t, &golden(), &golden_config(10)), Err(Error::BoundNotApplicable(_))));
    }
}
