//! TOML run configuration.
//!
//! Every field is optional. Missing values come from the selected builtin
//! case (the golden-ratio case when no builtin is named):
//!
//! ```toml
//! [problem]
//! builtin = "golden"            # "golden" | "kepler"
//! # expression = "sqrt(x + 1)"  # one-variable map in `x`, replaces the builtin
//! # contraction = 0.5           # required with `expression`
//! # domain = [0.0, 5.0]         # required with `expression`
//! # fixed_point = 1.618033988749895
//!
//! [mann]
//! a = 0.25
//! x1 = 1.3
//! # radius = 0.3180339887498949  # default |x1 - x*|, or the domain width
//! n_max = 100000
//! clamp = false
//!
//! [noise]
//! phi = 0.8
//! scale = 1.0
//! seed = 42                     # 0 ..= 2^63 - 1 (TOML integers are signed)
//!
//! [bounds]
//! p = 100.0
//! beta = 100.0
//! d = 1.0
//! rho = 0.05
//! r = 41.0
//! delta = 1.0
//! k1 = 1.0
//! k3 = 1.0
//! c_fn = 1.0
//! # series_s = 1.8896        # default computed from a(1 - c)
//! # s_n_sq = 2.0
//! t3_form = "final"          # or "intermediate"
//!
//! [ensemble]
//! replications = 100
//! checkpoints = [100, 1000, 10000, 100000]
//! ```

use std::path::Path;

use exmex::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{series_constant, BoundConstants, MixingParams, T3Form};
use crate::cases::{builtin, golden_problem, BenchmarkCase};
use crate::error::{Error, Result};
use crate::iteration::{Domain, FixedPointProblem, MannConfig};
use crate::montecarlo::DEFAULT_CHECKPOINTS;
use crate::noise::NoiseSpec;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSection {
    pub builtin: Option<String>,
    pub expression: Option<String>,
    pub contraction: Option<f64>,
    pub domain: Option<[f64; 2]>,
    pub fixed_point: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MannSection {
    pub a: Option<f64>,
    pub x1: Option<f64>,
    pub radius: Option<f64>,
    pub n_max: Option<usize>,
    pub clamp: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSection {
    pub phi: Option<f64>,
    pub scale: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSection {
    pub p: Option<f64>,
    pub beta: Option<f64>,
    pub d: Option<f64>,
    pub rho: Option<f64>,
    pub r: Option<f64>,
    pub delta: Option<f64>,
    pub k1: Option<f64>,
    pub k3: Option<f64>,
    pub c_fn: Option<f64>,
    pub series_s: Option<f64>,
    pub s_n_sq: Option<f64>,
    pub t3_form: Option<T3Form>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSection {
    pub replications: Option<usize>,
    pub checkpoints: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub problem: ProblemSection,
    #[serde(default)]
    pub mann: MannSection,
    #[serde(default)]
    pub noise: NoiseSection,
    #[serde(default)]
    pub bounds: BoundsSection,
    #[serde(default)]
    pub ensemble: EnsembleSection,
}

/// Everything a command needs, with defaults filled in and the hard
/// preconditions of the iteration checked.
#[derive(Debug, Clone)]
pub struct ResolvedRun {
    pub problem: FixedPointProblem,
    pub mann: MannConfig,
    pub noise: NoiseSpec,
    pub params: MixingParams,
    pub consts: BoundConstants,
    pub t3_form: T3Form,
    pub replications: usize,
    pub checkpoints: Vec<usize>,
    /// The builtin case when the problem was not replaced by an expression.
    pub case: Option<BenchmarkCase>,
}

struct BoundDefaults {
    p: f64,
    beta: f64,
    rho: f64,
    r: f64,
    delta: f64,
}

fn bound_defaults(name: &str) -> BoundDefaults {
    match name {
        // a(1-c) = 0.7149: 0.65 < 0.7 < 0.7149.
        "kepler" => BoundDefaults { p: 10.0, beta: 3.0, rho: 0.7, r: 4.0, delta: 0.1 },
        // a(1-c) = 0.125: 2/q = 0.0396 < 0.05 < 0.125.
        _ => BoundDefaults { p: 100.0, beta: 100.0, rho: 0.05, r: 41.0, delta: 1.0 },
    }
}

/// Compiles a one-variable expression in `x`.
pub fn parse_map(expression: &str) -> Result<impl Fn(f64) -> f64 + Send + Sync + 'static> {
    let expr = exmex::parse::<f64>(expression).map_err(|e| Error::Config(format!("expression `{expression}`: {e}")))?;
    let vars: Vec<String> = expr.var_names().iter().map(|v| v.to_string()).collect();
    if vars.iter().any(|v| v != "x") {
        return Err(Error::Config(format!("expression `{expression}` may only use the variable x, found {vars:?}")));
    }
    let uses_x = !vars.is_empty();
    Ok(move |x: f64| {
        let args: &[f64] = if uses_x { &[x] } else { &[] };
        expr.eval(args).unwrap_or(f64::NAN)
    })
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    fn base_case(&self) -> Result<(String, BenchmarkCase)> {
        let name = self.problem.builtin.clone().unwrap_or_else(|| "golden".to_string());
        let case = builtin(&name).ok_or_else(|| Error::Config(format!("unknown builtin problem `{name}`")))?;
        Ok((name, case))
    }

    fn build_problem(&self, base: &BenchmarkCase) -> Result<(FixedPointProblem, bool)> {
        let sec = &self.problem;
        match &sec.expression {
            Some(expr) => {
                if sec.builtin.is_some() {
                    return Err(Error::Config("give either `builtin` or `expression`, not both".into()));
                }
                let c = sec.contraction.ok_or_else(|| Error::Config("`contraction` is required with `expression`".into()))?;
                let [lo, hi] = sec.domain.ok_or_else(|| Error::Config("`domain` is required with `expression`".into()))?;
                let mut problem = FixedPointProblem::new(expr.clone(), parse_map(expr)?, c, Domain::new(lo, hi)?)?;
                if let Some(x_star) = sec.fixed_point {
                    problem = problem.with_fixed_point(x_star)?;
                }
                Ok((problem, false))
            }
            None => {
                let mut problem = base.problem.clone();
                if let Some(c) = sec.contraction {
                    problem.contraction = c;
                }
                if let Some([lo, hi]) = sec.domain {
                    problem.domain = Domain::new(lo, hi)?;
                }
                if sec.fixed_point.is_some() {
                    return Err(Error::Config("builtin problems carry their own fixed point".into()));
                }
                Ok((problem, true))
            }
        }
    }

    /// Fills defaults and checks (H1), (H2), the step condition and the noise
    /// parameters. Bound parameters are only range-checked by the commands
    /// that use them.
    pub fn resolve(&self) -> Result<ResolvedRun> {
        let (name, base) = self.base_case()?;
        let (problem, is_builtin) = self.build_problem(&base)?;
        let defaults = if is_builtin { base.clone() } else { golden_problem() };

        let m = &self.mann;
        let x1 = m.x1.unwrap_or(defaults.config.x1);
        let radius = match m.radius {
            Some(r) => r,
            None => match problem.known_fixed_point {
                Some(x_star) if (x1 - x_star).abs() > 0.0 => (x1 - x_star).abs(),
                Some(_) => f64::EPSILON,
                None => problem.domain.width(),
            },
        };
        let mann = MannConfig {
            a: m.a.unwrap_or(defaults.config.a),
            x1,
            radius,
            n_max: m.n_max.unwrap_or(defaults.config.n_max),
            clamp_to_domain: m.clamp.unwrap_or(false),
        };
        mann.check(&problem)?;

        let noise = NoiseSpec {
            phi: self.noise.phi.unwrap_or(defaults.noise.phi),
            innovation_scale: self.noise.scale.unwrap_or(defaults.noise.innovation_scale),
            seed: self.noise.seed.unwrap_or(defaults.noise.seed),
            stream: 0,
        };
        noise.check()?;

        let b = &self.bounds;
        let bd = bound_defaults(if is_builtin { &name } else { "golden" });
        let params = MixingParams {
            p: b.p.unwrap_or(bd.p),
            beta: b.beta.unwrap_or(bd.beta),
            d: b.d.unwrap_or(1.0),
            rho: b.rho.unwrap_or(bd.rho),
        };
        let series_s = match b.series_s {
            Some(s) => s,
            None => series_constant(mann.decay(&problem), 1e-12)?,
        };
        let consts = BoundConstants {
            r: b.r.unwrap_or(bd.r),
            delta: b.delta.unwrap_or(bd.delta),
            k1: b.k1.unwrap_or(1.0),
            k3: b.k3.unwrap_or(1.0),
            c_fn: b.c_fn.unwrap_or(1.0),
            series_s,
            s_n_sq: b.s_n_sq,
        };

        let checkpoints = match &self.ensemble.checkpoints {
            Some(c) => c.clone(),
            None => {
                let mut c: Vec<usize> = DEFAULT_CHECKPOINTS.iter().copied().filter(|&n| n <= mann.n_max).collect();
                if c.last() != Some(&mann.n_max) && c.len() < 3 {
                    c.push(mann.n_max);
                }
                c
            }
        };

        Ok(ResolvedRun {
            problem,
            mann,
            noise,
            params,
            consts,
            t3_form: b.t3_form.unwrap_or_default(),
            replications: self.ensemble.replications.unwrap_or(100),
            checkpoints,
            case: is_builtin.then_some(base),
        })
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::cases::{GOLDEN_RATIO, KEPLER_FIXED_POINT};

    #[test]
    fn empty_config_is_golden() {
        let run = RunConfig::default().resolve().unwrap();
        assert_eq!(run.problem.name(), "golden");
        assert_eq!(run.mann.a, 0.25);
        assert_eq!(run.mann.x1, 1.3);
        assert!((run.mann.radius - (GOLDEN_RATIO - 1.3)).abs() < 1e-15);
        assert_eq!(run.noise.phi, 0.8);
        assert_eq!(run.noise.seed, 42);
        assert_eq!(run.checkpoints, DEFAULT_CHECKPOINTS.to_vec());
        assert!((run.consts.series_s - 1.895058149156763190).abs() < 1e-13);
    }

    #[test]
    fn kepler_builtin_defaults() {
        let cfg = RunConfig::from_toml_str("[problem]\nbuiltin = \"kepler\"\n[mann]\nn_max = 10000\n").unwrap();
        let run = cfg.resolve().unwrap();
        assert_eq!(run.problem.known_fixed_point, Some(KEPLER_FIXED_POINT));
        assert_eq!(run.mann.a, 0.9);
        assert_eq!(run.noise.phi, 0.7);
        assert_eq!(run.checkpoints, vec![100, 1000, 10000]);
        assert_eq!(run.params.rho, 0.7);
    }

    #[test]
    fn expression_problem() {
        let text = r#"
            [problem]
            expression = "0.5 * cos(x)"
            contraction = 0.5
            domain = [-1.0, 1.0]
            [mann]
            a = 0.8
            x1 = 0.0
            n_max = 50
        "#;
        let run = RunConfig::from_toml_str(text).unwrap().resolve().unwrap();
        assert!((run.problem.eval(0.3) - 0.5 * 0.3f64.cos()).abs() < 1e-15);
        assert_eq!(run.mann.radius, 2.0);
        assert!(run.case.is_none());
    }

    #[test]
    fn expression_rejects_other_variables() {
        assert!(parse_map("x + y").is_err());
        assert!(parse_map("sqrt(x + ").is_err());
        let k = parse_map("2.5").unwrap();
        assert_eq!(k(7.0), 2.5);
    }

    #[test]
    fn contraction_above_one_names_h2() {
        let cfg = RunConfig::from_toml_str("[problem]\ncontraction = 1.2\n").unwrap();
        match cfg.resolve() {
            Err(Error::Hypothesis { hypothesis, .. }) => assert_eq!(hypothesis, "H2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(RunConfig::from_toml_str("[mann]\nstep = 1.0\n").is_err());
        assert!(RunConfig::from_toml_str("[problem]\nbuiltin = \"venus\"\n").unwrap().resolve().is_err());
    }
}
