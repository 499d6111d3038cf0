use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Variants fall in two families: input errors ([`Error::is_input_error`])
/// where the caller asked for something outside a contract, and numerical
/// failures where a well-posed computation could not be certified.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("order {order} exceeds the configured Bessel order cap {cap} (raise the cap explicitly)")]
    Capacity { order: u32, cap: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("no root of the stationarity function below r = {bracket_max} (f = {f_last} there)")]
    NoRoot { bracket_max: f64, f_last: f64 },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(
        "bifurcation scan inconclusive: mu_n monotone only on [{n_star_candidate}, {n_max}], \
         fewer than the {window} modes required"
    )]
    Inconclusive {
        n_star_candidate: u32,
        n_max: u32,
        window: u32,
        /// `B_n` for every computed mode, for diagnostics.
        b_values: Vec<f64>,
    },

    #[error("mode {n} is not an admissible bifurcation mode: {reason}")]
    Mode { n: u32, reason: String },

    #[error("amplitude |epsilon| = {epsilon} exceeds the first-order admissibility bound {bound}")]
    Amplitude { epsilon: f64, bound: f64 },

    #[error("finite-difference oracle failed: {0}")]
    Oracle(String),
}

impl Error {
    /// True for errors caused by the request rather than by the numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Capacity { .. }
                | Error::InvalidParams(_)
                | Error::Mode { .. }
                | Error::Amplitude { .. }
        )
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
