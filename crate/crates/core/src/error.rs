use thiserror::Error;

/// Errors raised by the closed-form engine and the oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WqedError {
    /// Argument outside the domain of a special function.
    #[error("domain error in {function}: {reason}")]
    Domain {
        function: &'static str,
        reason: String,
    },

    /// Field sample violates the light-cone condition of its kernel.
    #[error("causality violated: {0}")]
    Causality(String),

    /// Field sample inside the regularization zone around a qubit.
    #[error("x = {x} m lies within the exclusion zone of the qubit at {qubit} m (radius {radius} m)")]
    ExclusionZone { x: f64, qubit: f64, radius: f64 },

    /// Field requested in a region where that travelling wave is undefined.
    #[error("{field} field is not defined in region {region}")]
    Region { field: &'static str, region: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Quadrature truncation error exceeded the requested tolerance.
    #[error("quadrature truncation error {estimate:e} exceeds tolerance {tolerance:e}")]
    Truncation { estimate: f64, tolerance: f64 },

    /// RK4 local error estimate exceeded the acceptance threshold.
    #[error("step rejected at t = {t:e} s: local error estimate {estimate:e} > {limit:e}")]
    StepRejected { t: f64, estimate: f64, limit: f64 },

    /// Total norm of the discretized continuum drifted beyond the abort threshold.
    #[error("norm drift {drift:e} at t = {t:e} s exceeds {limit:e}")]
    NormDrift { t: f64, drift: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, WqedError>;

pub(crate) fn domain(function: &'static str, reason: impl Into<String>) -> WqedError {
    WqedError::Domain {
        function,
        reason: reason.into(),
    }
}
