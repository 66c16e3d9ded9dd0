//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A configuration invariant was violated; the message names it.
    #[error("validation error: {0}")]
    Validation(String),

    /// Both Rabi frequencies vanish; the manifold basis is ill-defined.
    #[error("degenerate manifold: total Rabi frequency is zero")]
    DegenerateManifold,

    /// `practical_units` only supports orders 1..=3.
    #[error("unsupported nonlinearity order {0} (expected 1, 2 or 3)")]
    UnsupportedOrder(usize),

    /// Eigensolver residual exceeded the contract tolerance.
    #[error("eigensolver failed to converge: residual {residual:.3e} > {tolerance:.3e}")]
    ConvergenceFailure { residual: f64, tolerance: f64 },

    /// Time step too coarse for the fastest frequency scale.
    #[error("time step too large: dt*max(Omega, Delta1) = {product:.3e} > {limit:.3e}")]
    StepTooLarge { product: f64, limit: f64 },

    /// Evolution stopped conserving the state norm.
    #[error("norm drift {drift:.3e} exceeds {limit:.3e} during evolution")]
    NormDrift { drift: f64, limit: f64 },

    /// Truncation window captures too little Poisson mass.
    #[error("truncation window mass deficit {deficit:.3e} exceeds {epsilon:.3e}")]
    Truncation { deficit: f64, epsilon: f64 },

    /// Power-series expansion requested outside its convergence regime.
    #[error("series regime violation: rabi_probe {rabi_probe:.3e} >= rabi_coupling {rabi_coupling:.3e}")]
    SeriesRegimeViolation { rabi_probe: f64, rabi_coupling: f64 },

    /// Large-n formula invoked below the mean-photon-number floor.
    #[error("large-n violation: mean photon number {n_mean:.3e} below floor {floor:.3e}")]
    LargeNViolation { n_mean: f64, floor: f64 },

    /// Configuration document could not be parsed.
    #[error("config parse error: {0}")]
    ConfigParse(String),
}
