//! Mann's fixed-point iteration for contractive real maps driven by
//! strongly mixing (α-mixing) random errors.
//!
//! The crate is organised bottom-up:
//!
//! - [`rng`] and [`noise`]: a pinned counter-based generator, Box-Muller
//!   Gaussians and the AR(1) error sequence, plus tail/autocorrelation
//!   diagnostics.
//! - [`iteration`]: the Picard baseline, the stochastic Mann update and the
//!   pathwise error bound that dominates every unclamped trace.
//! - [`bounds`]: product/series inequalities, the Fuk-Nagaev calculator, the
//!   convergence-rate radius, the three tail terms and the smallest iteration
//!   count reaching a confidence level.
//! - [`montecarlo`]: seeded, thread-count-independent replication, coverage,
//!   log-log rate fits and the covariance-sum estimator.
//! - [`cases`]: the golden-ratio and Kepler benchmark problems and their
//!   reference tables.
//! - [`config`] and [`cli`]: the TOML run configuration and the command
//!   implementations behind the `mann` binary.
//!
//! ```
//! use stochastic_mann::cases::golden_problem;
//! use stochastic_mann::iteration::run_mann;
//!
//! let case = golden_problem();
//! let mut config = case.config.clone();
//! config.n_max = 1_000;
//! let trace = run_mann(&case.problem, &config, &case.noise).unwrap();
//! assert_eq!(trace.len(), 1_000);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cases;
pub mod cli;
pub mod config;
pub mod error;
pub mod iteration;
pub mod montecarlo;
pub mod noise;
pub mod rng;

pub use error::{Error, Result};
