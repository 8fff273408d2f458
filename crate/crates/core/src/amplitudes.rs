//! Qubit and spectral photon amplitudes under the delta-pulse drive.
//!
//! The incident part of the forward amplitude, `γ₀(ω) = A δ(ω − ω_S)`, is a
//! distribution and is never sampled. [`SpectralAmplitude::gamma_fwd`] holds the
//! scattered part `γ₁`; the incident plane wave is added back in field space.

use serde::Serialize;

use crate::error::{Result, WqedError};
use crate::model::{CollectiveRates, ModelParams};
use crate::ComplexValue;

/// Below this `|z t|` the quotient `(e^{izt} − 1)/z` is replaced by its series.
pub const PHI_SERIES_WINDOW: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QubitState {
    pub beta1: ComplexValue,
    pub beta2: ComplexValue,
    pub t: f64,
}

impl QubitState {
    pub fn population(&self) -> f64 {
        self.beta1.norm_sqr() + self.beta2.norm_sqr()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralAmplitude {
    pub omega: f64,
    /// Scattered forward amplitude `γ₁(ω,t)`.
    pub gamma_fwd: ComplexValue,
    /// Backward amplitude `δ(ω,t)`.
    pub delta_bwd: ComplexValue,
    pub t: f64,
}

/// `(e^w − 1)/w`, accurate for small `|w|`.
pub(crate) fn expm1_ratio(w: ComplexValue) -> ComplexValue {
    if w.norm() < PHI_SERIES_WINDOW {
        return 1.0 + 0.5 * w;
    }
    expm1(w) / w
}

/// `e^w − 1` without cancellation near `w = 0`.
pub(crate) fn expm1(w: ComplexValue) -> ComplexValue {
    let (s, c) = w.im.sin_cos();
    let half = (0.5 * w.im).sin();
    let re = w.re.exp_m1() * c - 2.0 * half * half;
    let im = w.re.exp() * s;
    ComplexValue::new(re, im)
}

/// `φ(z, t) = (e^{izt} − 1)/z`, with the limit `it` at `z = 0`.
pub fn phi(z: ComplexValue, t: f64) -> ComplexValue {
    let i = ComplexValue::i();
    i * t * expm1_ratio(i * z * t)
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(WqedError::InvalidParams(format!(
            "time must be finite and nonnegative, got {t}"
        )));
    }
    Ok(())
}

/// Closed-form `β₁(t)`, `β₂(t)`.
pub fn qubit_amplitudes(
    rates: &CollectiveRates,
    params: &ModelParams,
    t: f64,
) -> Result<QubitState> {
    check_time(t)?;
    let drive = ComplexValue::cis((params.omega_q() - params.omega_s()) * t);
    let plus = 0.5 * rates.c_plus * ((-rates.gamma_plus * t).exp() - drive);
    let minus = 0.5 * rates.c_minus * ((-rates.gamma_minus * t).exp() - drive);
    Ok(QubitState {
        beta1: plus + minus,
        beta2: plus - minus,
        t,
    })
}

/// `D±(ω,t)` for both channels.
pub fn d_factors(
    rates: &CollectiveRates,
    params: &ModelParams,
    omega: f64,
    t: f64,
) -> (ComplexValue, ComplexValue) {
    let i = ComplexValue::i();
    let drive = phi(ComplexValue::new(omega - params.omega_s(), 0.0), t);
    let dq = omega - params.omega_q();
    let d_plus = phi(dq + i * rates.gamma_plus, t) - drive;
    let d_minus = phi(dq + i * rates.gamma_minus, t) - drive;
    (d_plus, d_minus)
}

/// Closed-form `γ₁(ω,t)` and `δ(ω,t)`.
pub fn spectral_amplitudes(
    rates: &CollectiveRates,
    params: &ModelParams,
    omega: f64,
    t: f64,
) -> Result<SpectralAmplitude> {
    check_time(t)?;
    if !(omega.is_finite() && omega > 0.0) {
        return Err(WqedError::InvalidParams(format!(
            "omega must be finite and positive, got {omega}"
        )));
    }
    let (d_plus, d_minus) = d_factors(rates, params, omega, t);
    let half_g = 0.5 * params.coupling_g();
    let phase = ComplexValue::cis(params.k_of(omega) * params.distance());
    let cp = rates.c_plus * d_plus;
    let cm = rates.c_minus * d_minus;
    let gamma_fwd = -half_g * ((1.0 + phase.conj()) * cp + (1.0 - phase.conj()) * cm);
    let delta_bwd = -half_g * ((1.0 + phase) * cp + (1.0 - phase) * cm);
    Ok(SpectralAmplitude {
        omega,
        gamma_fwd,
        delta_bwd,
        t,
    })
}
