//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or input is outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Configuration file or flag problem.
    #[error("config error: {0}")]
    Config(String),

    /// The implicit step's fixed-point iteration failed to converge,
    /// which usually means the time step is too large for this z/energy.
    #[error(
        "fixed-point iteration did not converge at t = {t} (tau = {tau}): \
         residual {residual:.3e} after {iterations} iterations"
    )]
    FixedPointDiverged {
        t: f64,
        tau: f64,
        iterations: u32,
        residual: f64,
    },

    /// A trajectory produced a non-finite phase-space value.
    #[error("non-finite value in {context} at t = {t}")]
    NonFinite { context: &'static str, t: f64 },

    /// Period detection gave up before seeing enough momentum zero crossings.
    #[error(
        "found only {found} momentum zero crossings within t = {searched:.3} \
         (10x the analytic period estimate {estimate:.3})"
    )]
    NoCrossing {
        found: usize,
        searched: f64,
        estimate: f64,
    },

    #[error("empty ensemble")]
    EmptyEnsemble,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for configuration problems,
    /// 3 for numerical failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Domain(_)
            | Error::FixedPointDiverged { .. }
            | Error::NonFinite { .. }
            | Error::NoCrossing { .. }
            | Error::EmptyEnsemble => 3,
            Error::Io(_) => 1,
        }
    }
}
