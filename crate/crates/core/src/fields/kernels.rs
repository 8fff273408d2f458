//! Space-time kernels of the scattered field.
//!
//! Every kernel is the frequency integral
//!
//! ```text
//! K(σ, t, c) = ∫₀^∞ dω e^{iωS} (e^{i(ω−c)t} − 1)/(ω − c),   S = σ − t < 0,
//! ```
//!
//! where `σ = +x_shift/v_g` for forward waves and `σ = −x_shift/v_g` for
//! backward waves. A complex `c = Ω±` with `Im c < 0` gives the decaying
//! kernels `I₁±`, `J₁±`; a real `c` gives the drive kernels `I₂`, `J₂`
//! (`c = ω_S`) and the resonant kernels `I₃`, `J₃` (`c = Ω`).
//!
//! With `E1s(z) = e^z E1(z)`:
//!
//! ```text
//! K = e^{−ict} E1s(icσ) − E1s(icS) + 2πi e^{icS} [σ > 0]
//! ```
//!
//! For real `c = a` this reduces to sine and cosine integrals:
//!
//! ```text
//! σ > 0:  e^{iaS} [2πi − ci(aσ) + i si(aσ) + ci(a|S|) + i si(a|S|)]
//! σ < 0:  e^{iaS} [−ci(a|σ|) − i si(a|σ|) + ci(a|S|) + i si(a|S|)]
//! ```

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{domain, Result, WqedError};
use crate::model::ModelParams;
use crate::specfun::{ci_si, cosine_integral, exp_integral_e1, exp_integral_e1_scaled, sine_integral};
use crate::ComplexValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    /// `σ` in seconds for a spatial argument `x_shift`.
    pub fn sigma(self, x_shift: f64, v_g: f64) -> f64 {
        match self {
            Direction::Forward => x_shift / v_g,
            Direction::Backward => -x_shift / v_g,
        }
    }
}

/// Argument convention for the first exponential integral of the decaying kernels.
///
/// `Printed` evaluates `e^{icσ} E1(cσ)`; `Rotated` evaluates `e^{icσ} E1(icσ)`.
/// Only `Rotated` reproduces the defining integral (see the oracle module's
/// convention resolver); `Printed` is kept so the check can be rerun.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum E1Convention {
    Printed,
    #[default]
    Rotated,
}

impl E1Convention {
    pub fn flipped(self) -> Self {
        match self {
            E1Convention::Printed => E1Convention::Rotated,
            E1Convention::Rotated => E1Convention::Printed,
        }
    }
}

/// Kernel split by long-time behaviour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParts {
    /// Terms bounded by `e^{−|Im c|·|S|}` (zero for real `c`).
    pub transient: ComplexValue,
    /// Terms depending only on `S`, decaying algebraically as `|S| → ∞`.
    pub tail: ComplexValue,
    /// Terms that survive `t → ∞` (zero for complex `c`).
    pub steady: ComplexValue,
}

impl KernelParts {
    pub fn total(&self) -> ComplexValue {
        self.transient + self.tail + self.steady
    }
}

fn check_sigma(sigma: f64, t: f64) -> Result<f64> {
    if !(sigma.is_finite() && t.is_finite()) {
        return Err(WqedError::InvalidParams(format!(
            "non-finite kernel arguments sigma = {sigma}, t = {t}"
        )));
    }
    if sigma == 0.0 {
        return Err(domain("kernel", "x_shift = 0 sits on a qubit"));
    }
    let s = sigma - t;
    if s >= 0.0 {
        return Err(WqedError::Causality(format!(
            "sigma - t = {s:e} s must be negative"
        )));
    }
    Ok(s)
}

fn check_frequency(c: ComplexValue) -> Result<()> {
    if !(c.re > 0.0 && c.im <= 0.0 && c.is_finite()) {
        return Err(domain(
            "kernel",
            format!("frequency {c} must have Re > 0 and Im <= 0"),
        ));
    }
    Ok(())
}

/// Steady part of the real-frequency kernel, without the `e^{iaS}` carrier.
fn drive_steady_bracket(sigma: f64, a: f64) -> Result<ComplexValue> {
    let (ci, si) = ci_si(a * sigma.abs())?;
    Ok(if sigma > 0.0 {
        ComplexValue::new(-ci, si + 2.0 * PI)
    } else {
        ComplexValue::new(-ci, -si)
    })
}

fn drive_parts(sigma: f64, t: f64, a: f64) -> Result<KernelParts> {
    let s = check_sigma(sigma, t)?;
    let carrier = ComplexValue::cis(a * s);
    let steady = carrier * drive_steady_bracket(sigma, a)?;
    let (ci, si) = ci_si(a * s.abs())?;
    Ok(KernelParts {
        transient: ComplexValue::new(0.0, 0.0),
        tail: carrier * ComplexValue::new(ci, si),
        steady,
    })
}

fn decay_parts(sigma: f64, t: f64, c: ComplexValue, convention: E1Convention) -> Result<KernelParts> {
    let s = check_sigma(sigma, t)?;
    let i = ComplexValue::i();
    let first = match convention {
        E1Convention::Rotated => exp_integral_e1_scaled(i * c * sigma)?,
        E1Convention::Printed => {
            (i * c * sigma.abs()).exp() * exp_integral_e1(c * sigma.abs())?
        }
    };
    let mut transient = (-i * c * t).exp() * first;
    if sigma > 0.0 {
        transient += 2.0 * PI * i * (i * c * s).exp();
    }
    Ok(KernelParts {
        transient,
        tail: -exp_integral_e1_scaled(i * c * s)?,
        steady: ComplexValue::new(0.0, 0.0),
    })
}

/// Parts of `K(σ, t, c)`; real `c` routes to the sine/cosine-integral form.
pub fn kernel_parts(
    sigma: f64,
    t: f64,
    c: ComplexValue,
    convention: E1Convention,
) -> Result<KernelParts> {
    check_frequency(c)?;
    if c.im == 0.0 {
        drive_parts(sigma, t, c.re)
    } else {
        decay_parts(sigma, t, c, convention)
    }
}

/// `K(σ, t, c)` with the default convention.
pub fn kernel(sigma: f64, t: f64, c: ComplexValue) -> Result<ComplexValue> {
    Ok(kernel_parts(sigma, t, c, E1Convention::default())?.total())
}

/// `t → ∞` form of `K(σ, t, c)`, keeping the carrier phase `e^{icS}`.
pub fn kernel_steady(sigma: f64, t: f64, c: ComplexValue) -> Result<ComplexValue> {
    check_frequency(c)?;
    if !(sigma.is_finite() && t.is_finite()) || sigma == 0.0 {
        return Err(domain("kernel", format!("invalid sigma {sigma}")));
    }
    if c.im != 0.0 {
        return Ok(ComplexValue::new(0.0, 0.0));
    }
    let a = c.re;
    Ok(ComplexValue::cis(a * (sigma - t)) * drive_steady_bracket(sigma, a)?)
}

/// Real-frequency kernel written with signed `Si` and the sign functions
/// instead of `si(|·|)`. Identical to the `c` real case of [`kernel`].
pub fn drive_kernel_sine_form(sigma: f64, t: f64, a: f64) -> Result<ComplexValue> {
    let s = check_sigma(sigma, t)?;
    let ci_sigma = cosine_integral(a * sigma.abs())?;
    let ci_s = cosine_integral(a * s.abs())?;
    let imag = sine_integral(a * sigma) - sine_integral(a * s)
        + FRAC_PI_2 * (sigma.signum() - s.signum());
    Ok(ComplexValue::cis(a * s) * ComplexValue::new(ci_s - ci_sigma, imag))
}

/// `I₁±(x_shift, t)`: forward decaying kernel at `omega_c = Ω±`.
pub fn decay_kernel_fwd(
    params: &ModelParams,
    x_shift: f64,
    t: f64,
    omega_c: ComplexValue,
) -> Result<ComplexValue> {
    decay_kernel(Direction::Forward, params, x_shift, t, omega_c, E1Convention::default())
}

/// `J₁±(x_shift, t)`: backward decaying kernel at `omega_c = Ω±`.
pub fn decay_kernel_bwd(
    params: &ModelParams,
    x_shift: f64,
    t: f64,
    omega_c: ComplexValue,
) -> Result<ComplexValue> {
    decay_kernel(Direction::Backward, params, x_shift, t, omega_c, E1Convention::default())
}

/// Decaying kernel with an explicit E1 convention.
pub fn decay_kernel(
    direction: Direction,
    params: &ModelParams,
    x_shift: f64,
    t: f64,
    omega_c: ComplexValue,
    convention: E1Convention,
) -> Result<ComplexValue> {
    let sigma = direction.sigma(x_shift, params.v_g());
    Ok(kernel_parts(sigma, t, omega_c, convention)?.total())
}

/// `I₂(x_shift, t)` at the real frequency `omega_ref` (normally `ω_S`).
pub fn drive_kernel_fwd(params: &ModelParams, x_shift: f64, t: f64, omega_ref: f64) -> Result<ComplexValue> {
    let sigma = Direction::Forward.sigma(x_shift, params.v_g());
    kernel(sigma, t, ComplexValue::new(omega_ref, 0.0))
}

/// `J₂(x_shift, t)` at the real frequency `omega_ref`.
pub fn drive_kernel_bwd(params: &ModelParams, x_shift: f64, t: f64, omega_ref: f64) -> Result<ComplexValue> {
    let sigma = Direction::Backward.sigma(x_shift, params.v_g());
    kernel(sigma, t, ComplexValue::new(omega_ref, 0.0))
}

/// `I₃`/`J₃`: drive kernel evaluated at `Ω`.
pub fn resonant_kernel(
    direction: Direction,
    x_shift: f64,
    t: f64,
    params: &ModelParams,
) -> Result<ComplexValue> {
    let sigma = direction.sigma(x_shift, params.v_g());
    kernel(sigma, t, ComplexValue::new(params.omega_q(), 0.0))
}
