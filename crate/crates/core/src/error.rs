use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("discord radicand is negative ({0:e}); input is not a valid X state")]
    NegativeRadicand(f64),

    #[error("truncation order {order} exceeds hard cap {cap} (nbar = {nbar})")]
    TruncationCap { order: usize, cap: usize, nbar: f64 },

    #[error(
        "variational search did not converge: best {best:e}, last improvement {improvement:e}"
    )]
    NotConverged { best: f64, improvement: f64 },

    #[error("Fock cutoff captures only {captured:.3e} of the thermal weight (leakage {leakage:.3e} > {limit:.1e})")]
    Leakage {
        captured: f64,
        leakage: f64,
        limit: f64,
    },

    #[error("reduced state is not of X form: off-pattern entry of magnitude {0:e}")]
    NotXForm(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
