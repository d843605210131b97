use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its admissible range.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// One of the standing hypotheses (H1)-(H5) or the step condition fails.
    #[error("hypothesis {hypothesis} violated: {detail}")]
    Hypothesis { hypothesis: &'static str, detail: String },

    /// The rate window 2(β+p)/(p(β+1)) < ρ < a(1-c) < 1 (or r > 2/ρ) fails.
    #[error("invalid rate window: {0}")]
    InvalidWindow(String),

    #[error("iterate left the domain [{lo}, {hi}] at step {step}: x = {value}")]
    DomainEscape { step: usize, value: f64, lo: f64, hi: f64 },

    #[error("non-finite state at step {step}: x = {x}, xi = {xi}")]
    InvalidState { step: usize, x: f64, xi: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("bound not applicable: {0}")]
    BoundNotApplicable(String),

    #[error("tail bound still {bound} > sigma at n_cap = {n_cap}")]
    NotFound { n_cap: u64, bound: f64 },

    #[error("checkpoint {0} was not recorded")]
    UnknownCheckpoint(usize),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("empty sample")]
    EmptySamples,

    #[error("zero-variance sample: correlation undefined")]
    ZeroVariance,

    #[error("replication {index}: {source}")]
    Replication {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }

    pub(crate) fn hypothesis(hypothesis: &'static str, detail: impl Into<String>) -> Self {
        Error::Hypothesis { hypothesis, detail: detail.into() }
    }

    /// True for errors caused by the inputs rather than by the numerics of a
    /// run. The CLI maps these to exit code 2 and everything else to 3.
    pub fn is_config_error(&self) -> bool {
        match self {
            Error::InvalidParameter { .. }
            | Error::Hypothesis { .. }
            | Error::InvalidWindow(_)
            | Error::Config(_)
            | Error::Unsupported(_)
            | Error::UnknownCheckpoint(_) => true,
            Error::Replication { source, .. } => source.is_config_error(),
            _ => false,
        }
    }
}
