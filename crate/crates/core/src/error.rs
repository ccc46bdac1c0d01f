use thiserror::Error;

/// Errors raised across the laboratory.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("symbol `{name}` evaluated to {value} at r = {r}")]
    SymbolEvaluation { name: String, r: f64, value: f64 },

    #[error("unknown symbol `{0}`; supported: {supported}", supported = crate::symbols::SUPPORTED_NAMES.join(", "))]
    UnknownSymbol(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("declared metadata of `{name}` disagrees with the probe: {detail}")]
    MetadataMismatch { name: String, detail: String },

    #[error("profile multiplier g1 is singular at r = {r}, mu = {mu}")]
    ProfileSingularity { r: f64, mu: f64 },

    #[error("oracle budget exceeded: {steps} steps requested")]
    OracleBudget { steps: f64 },

    #[error("exterior tail not converged: last decade holds {ratio:.3e} of the total")]
    TailNotConverged { ratio: f64 },

    #[error("integrand is not finite at r = {r}")]
    NonFiniteIntegrand { r: f64 },

    #[error("small-frequency multiplier diverges: 2s + n = {0} <= 0")]
    DivergentSmallFrequency(f64),

    #[error("alpha set is empty: 2s + n = {0} <= 0")]
    EmptyAlphaSet(f64),

    #[error("local slope of the alpha integrand has no trend (spread {spread:.3e})")]
    AlphaUndecided { spread: f64 },

    #[error("decay fit needs positive norms: {0}")]
    FitDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
