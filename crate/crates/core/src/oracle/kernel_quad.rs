//! Brute-force frequency quadrature of the defining integrals.
//!
//! On `[0, ω_max]` the integrand is summed with composite Gauss–Legendre
//! panels resolving the fastest phase. Past `ω_max` the integrand is split
//! into its two pure-exponential pieces `e^{iωs}/(ω − c)`; each is integrated
//! numerically until `|s(ω − c)| ≥ 40` and closed with the asymptotic series
//! `−e^{iWs} Σ n!/((is)^{n+1}(W − c)^{n+1})`, whose first omitted term is the
//! reported truncation estimate.

use std::f64::consts::PI;

use serde::Serialize;

use super::quadrature::{adaptive_gk15, adaptive_gk15_semi_infinite, composite_gl};
use crate::amplitudes::{phi, qubit_amplitudes, spectral_amplitudes, SpectralAmplitude};
use crate::error::{Result, WqedError};
use crate::fields::{incident_wave, kernel_parts, kernel_terms, Direction, E1Convention};
use crate::model::{rates_for, CollectiveRates, ModelParams};
use crate::ComplexValue;

/// `|s (W − c)|` at which the asymptotic tail takes over.
const TAIL_SWITCH: f64 = 40.0;
const TAIL_TERMS: usize = 4;

/// Resolution and tolerance of the frequency quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadSpec {
    /// Cutoff of the resolved part, rad/s.
    pub omega_max: f64,
    /// Panels per `2π` of the fastest phase.
    pub panels_per_period: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl QuadSpec {
    /// Default spec: cutoff `20·max(Ω, ω_S)`, 16 panels per period.
    pub fn for_params(params: &ModelParams) -> Self {
        Self {
            omega_max: 20.0 * params.omega_q().max(params.omega_s()),
            panels_per_period: 16,
            abs_tol: 1e-12,
            rel_tol: 1e-4,
        }
    }

    pub fn validate(&self, params: &ModelParams) -> Result<()> {
        let floor = 20.0 * params.omega_q().max(params.omega_s());
        if !(self.omega_max >= floor * (1.0 - 1e-12)) {
            return Err(WqedError::InvalidParams(format!(
                "omega_max = {:e} is below 20·max(Ω, ω_S) = {floor:e}",
                self.omega_max
            )));
        }
        if self.panels_per_period < 16 {
            return Err(WqedError::InvalidParams(format!(
                "panels_per_period = {} is below 16",
                self.panels_per_period
            )));
        }
        if !(self.rel_tol > 0.0 && self.abs_tol >= 0.0) {
            return Err(WqedError::InvalidParams("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Which defining integral to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DefiningIntegral {
    /// `I₁±` / `J₁±` at `Ω±`; `plus` selects the channel.
    Decay { direction: Direction, plus: bool },
    /// `I₂` / `J₂` at `ω_S`.
    Drive(Direction),
    /// `I₃` / `J₃` at `Ω`.
    Resonant(Direction),
}

impl DefiningIntegral {
    pub fn direction(&self) -> Direction {
        match *self {
            DefiningIntegral::Decay { direction, .. } => direction,
            DefiningIntegral::Drive(d) | DefiningIntegral::Resonant(d) => d,
        }
    }

    /// Kernel frequency `c` for this integral.
    pub fn frequency(&self, rates: &CollectiveRates, params: &ModelParams) -> ComplexValue {
        match *self {
            DefiningIntegral::Decay { plus: true, .. } => rates.omega_plus(params),
            DefiningIntegral::Decay { plus: false, .. } => rates.omega_minus(params),
            DefiningIntegral::Drive(_) => ComplexValue::new(params.omega_s(), 0.0),
            DefiningIntegral::Resonant(_) => ComplexValue::new(params.omega_q(), 0.0),
        }
    }

    /// Closed form of this integral at `(x_shift, t)`.
    pub fn closed_form(
        &self,
        x_shift: f64,
        t: f64,
        params: &ModelParams,
        convention: E1Convention,
    ) -> Result<ComplexValue> {
        let rates = rates_for(params);
        let sigma = self.direction().sigma(x_shift, params.v_g());
        Ok(kernel_parts(sigma, t, self.frequency(&rates, params), convention)?.total())
    }
}

/// Quadrature value and its estimated truncation error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: ComplexValue,
    pub truncation: f64,
}

fn panels_for(span: f64, fastest: f64, spec: &QuadSpec) -> usize {
    let periods = span * fastest / (2.0 * PI);
    ((periods * spec.panels_per_period as f64).ceil() as usize).max(spec.panels_per_period)
}

/// `∫_W^∞ e^{iωs}/(ω − c) dω` and its truncation estimate.
fn exponential_tail(s: f64, c: ComplexValue, w: f64, spec: &QuadSpec) -> (ComplexValue, f64) {
    let i = ComplexValue::i();
    let w2 = w.max(c.re + TAIL_SWITCH / s.abs());
    let resolved = if w2 > w {
        let panels = panels_for(w2 - w, s.abs(), spec);
        composite_gl(|om| ComplexValue::cis(om * s) / (om - c), w, w2, panels)
    } else {
        ComplexValue::new(0.0, 0.0)
    };
    let u = w2 - c;
    let is = i * s;
    let mut series = ComplexValue::new(0.0, 0.0);
    let mut factorial = 1.0;
    let mut power = is * u;
    for n in 0..TAIL_TERMS {
        if n > 0 {
            factorial *= n as f64;
            power *= is * u;
        }
        series += factorial / power;
    }
    let next = factorial * TAIL_TERMS as f64 / (s.abs() * u.norm()).powi(TAIL_TERMS as i32 + 1);
    (resolved - ComplexValue::cis(w2 * s) * series, next)
}

/// Tail `∫_W^∞ e^{iωS} φ(ω − c, t) dω` split as `e^{−ict}∫e^{iωσ}/(ω−c) − ∫e^{iωS}/(ω−c)`.
fn kernel_tail(sigma: f64, t: f64, c: ComplexValue, w: f64, spec: &QuadSpec) -> (ComplexValue, f64) {
    let i = ComplexValue::i();
    let decay = (-i * c * t).exp();
    let (a, ea) = exponential_tail(sigma, c, w, spec);
    let (b, eb) = exponential_tail(sigma - t, c, w, spec);
    (decay * a - b, decay.norm() * ea + eb)
}

fn check_truncation(value: ComplexValue, truncation: f64, spec: &QuadSpec) -> Result<()> {
    let tolerance = spec.abs_tol.max(spec.rel_tol * value.norm());
    if truncation > tolerance {
        return Err(WqedError::Truncation {
            estimate: truncation,
            tolerance,
        });
    }
    Ok(())
}

fn check_causal(sigma: f64, t: f64) -> Result<()> {
    if sigma == 0.0 || !(sigma - t < 0.0) {
        return Err(WqedError::Causality(format!(
            "quadrature needs sigma != 0 and sigma - t < 0, got sigma = {sigma:e}, t = {t:e}"
        )));
    }
    Ok(())
}

/// Quadrature of `K(σ, t, c)`.
pub fn quad_sigma(sigma: f64, t: f64, c: ComplexValue, spec: &QuadSpec) -> Result<QuadResult> {
    check_causal(sigma, t)?;
    let s = sigma - t;
    let fastest = sigma.abs().max(t).max(s.abs());
    let w = spec.omega_max;
    let body = composite_gl(
        |om| ComplexValue::cis(om * s) * phi(om - c, t),
        0.0,
        w,
        panels_for(w, fastest, spec),
    );
    let (tail, truncation) = kernel_tail(sigma, t, c, w, spec);
    let value = body + tail;
    check_truncation(value, truncation, spec)?;
    Ok(QuadResult { value, truncation })
}

/// Quadrature of a defining integral at `(x_shift, t)`.
pub fn quad_kernel(
    id: DefiningIntegral,
    x_shift: f64,
    t: f64,
    params: &ModelParams,
    spec: &QuadSpec,
) -> Result<QuadResult> {
    spec.validate(params)?;
    let rates = rates_for(params);
    let sigma = id.direction().sigma(x_shift, params.v_g());
    quad_sigma(sigma, t, id.frequency(&rates, params), spec)
}

/// Travelling wave at `(x, t)` by quadrature of the closed-form spectral
/// amplitude against the plane-wave factor. The forward result includes `u₀`.
pub fn quad_field(
    direction: Direction,
    x: f64,
    t: f64,
    params: &ModelParams,
    spec: &QuadSpec,
) -> Result<QuadResult> {
    spec.validate(params)?;
    let rates = rates_for(params);
    let v_g = params.v_g();
    let terms = kernel_terms(&rates, params);
    let mut fastest = t;
    for term in &terms {
        let sigma = direction.sigma(x - term.shift, v_g);
        check_causal(sigma, t)?;
        fastest = fastest.max(sigma.abs()).max((sigma - t).abs());
    }
    let s0 = direction.sigma(x, v_g) - t;
    let w = spec.omega_max;
    let body = composite_gl(
        |om| {
            let amp = spectral_amplitudes(&rates, params, om.max(f64::MIN_POSITIVE), t)
                .expect("valid spectral arguments");
            let value = match direction {
                Direction::Forward => amp.gamma_fwd,
                Direction::Backward => amp.delta_bwd,
            };
            value * ComplexValue::cis(om * s0)
        },
        0.0,
        w,
        panels_for(w, fastest, spec),
    );
    let mut value = body;
    let mut truncation = 0.0;
    for term in &terms {
        let sigma = direction.sigma(x - term.shift, v_g);
        let (tail, err) = kernel_tail(sigma, t, term.frequency, w, spec);
        value += term.weight * tail;
        truncation += term.weight.norm() * err;
    }
    if direction == Direction::Forward {
        value += incident_wave(x, t, params);
    }
    check_truncation(value, truncation, spec)?;
    Ok(QuadResult { value, truncation })
}

/// `γ₁(ω,t)`, `δ(ω,t)` by adaptive quadrature of the closed-form `β(t′)` over `t′ ∈ [0, t]`.
pub fn quad_spectral(
    rates: &CollectiveRates,
    params: &ModelParams,
    omega: f64,
    t: f64,
) -> Result<SpectralAmplitude> {
    let dq = omega - params.omega_q();
    let integral = |second: bool| -> Result<ComplexValue> {
        let (v, _) = adaptive_gk15(
            |tp| {
                let q = qubit_amplitudes(rates, params, tp).expect("nonnegative time");
                let beta = if second { q.beta2 } else { q.beta1 };
                beta * ComplexValue::cis(dq * tp)
            },
            0.0,
            t,
            1e-15,
            1e-12,
        )?;
        Ok(v)
    };
    let b1 = integral(false)?;
    let b2 = integral(true)?;
    let g = params.coupling_g();
    let phase = ComplexValue::cis(params.k_of(omega) * params.distance());
    let minus_ig = -ComplexValue::i() * g;
    Ok(SpectralAmplitude {
        omega,
        gamma_fwd: minus_ig * (b1 + phase.conj() * b2),
        delta_bwd: minus_ig * (b1 + phase * b2),
        t,
    })
}

/// `E1(z) = e^{−z} ∫₀^∞ e^{−u}/(z + u) du` by adaptive quadrature, valid for `|arg z| < π`.
pub fn quad_e1(z: ComplexValue) -> Result<ComplexValue> {
    let (v, _) = adaptive_gk15_semi_infinite(|u| (-u).exp() / (z + u), 0.0, 1e-300, 1e-13)?;
    Ok((-z).exp() * v)
}

/// Outcome of the E1-convention check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConventionReport {
    pub initial: E1Convention,
    pub selected: E1Convention,
    pub flipped: bool,
    /// Worst relative error of each tried convention, in trial order.
    pub worst_errors: Vec<(E1Convention, f64)>,
}

/// Probes the decaying kernel at `σ > 0` points and keeps the first
/// convention, starting from `initial`, that matches quadrature within `tol`.
pub fn resolve_e1_convention(
    params: &ModelParams,
    probes: &[(DefiningIntegral, f64, f64)],
    spec: &QuadSpec,
    initial: E1Convention,
    tol: f64,
) -> Result<ConventionReport> {
    let references = probes
        .iter()
        .map(|&(id, x, t)| quad_kernel(id, x, t, params, spec).map(|q| q.value))
        .collect::<Result<Vec<_>>>()?;
    let mut worst_errors = Vec::new();
    for convention in [initial, initial.flipped()] {
        let mut worst = 0.0f64;
        for (&(id, x, t), reference) in probes.iter().zip(&references) {
            let closed = id.closed_form(x, t, params, convention)?;
            worst = worst.max((closed - reference).norm() / reference.norm());
        }
        worst_errors.push((convention, worst));
        if worst <= tol {
            return Ok(ConventionReport {
                initial,
                selected: convention,
                flipped: convention != initial,
                worst_errors,
            });
        }
    }
    Err(WqedError::InvalidParams(format!(
        "no E1 convention matches quadrature within {tol}: {worst_errors:?}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::kernel;

    fn params(kd: f64, detune: f64) -> ModelParams {
        let w = 2.0 * PI * 5.0e9;
        ModelParams::with_phase(w, 0.01 * w, kd, 3.0e8, w * (1.0 + detune), 1e-3 * w).unwrap()
    }

    #[test]
    fn tail_series_matches_resolved_integral() {
        let c = ComplexValue::new(1.0, -0.01);
        let spec = QuadSpec {
            omega_max: 20.0,
            panels_per_period: 32,
            abs_tol: 1e-14,
            rel_tol: 1e-6,
        };
        let (tail, err) = exponential_tail(3.0, c, 20.0, &spec);
        // Reference: resolve out to 400 and close there.
        let resolved = composite_gl(|om| ComplexValue::cis(3.0 * om) / (om - c), 20.0, 400.0, 8000);
        let (far, _) = exponential_tail(3.0, c, 400.0, &spec);
        assert!((tail - (resolved + far)).norm() < 1e-7);
        assert!(err < 1e-6);
    }

    #[test]
    fn drive_kernel_at_twice_the_separation() {
        let p = params(PI / 2.0, 0.003);
        let spec = QuadSpec::for_params(&p);
        let x = 2.0 * p.distance();
        let t = 50.0 / p.gamma();
        let q = quad_kernel(DefiningIntegral::Drive(Direction::Forward), x, t, &p, &spec).unwrap();
        let closed = DefiningIntegral::Drive(Direction::Forward)
            .closed_form(x, t, &p, E1Convention::Rotated)
            .unwrap();
        assert!((q.value - closed).norm() < 1e-6 * closed.norm());
    }

    #[test]
    fn cutoff_doubling_is_stable() {
        let p = params(PI / 2.0, 0.0);
        let mut spec = QuadSpec::for_params(&p);
        let x = 1.5 * p.distance();
        let t = 80.0 / p.omega_q();
        let id = DefiningIntegral::Decay { direction: Direction::Forward, plus: true };
        let a = quad_kernel(id, x, t, &p, &spec).unwrap().value;
        spec.omega_max *= 2.0;
        let b = quad_kernel(id, x, t, &p, &spec).unwrap().value;
        assert!((a - b).norm() < 1e-4 * a.norm());
    }

    #[test]
    fn removable_point_of_drive_integrand_is_finite() {
        let t = 3.0;
        let c = ComplexValue::new(2.0, 0.0);
        assert_eq!(phi(ComplexValue::new(2.0, 0.0) - c, t), ComplexValue::new(0.0, t));
        let q = quad_sigma(0.5, t, c, &QuadSpec { omega_max: 40.0, panels_per_period: 16, abs_tol: 1e-12, rel_tol: 1e-4 }).unwrap();
        let closed = kernel(0.5, t, c).unwrap();
        assert!((q.value - closed).norm() < 1e-6 * closed.norm());
    }

    #[test]
    fn spec_validation() {
        let p = params(PI / 2.0, 0.0);
        let mut spec = QuadSpec::for_params(&p);
        spec.omega_max = 5.0 * p.omega_q();
        assert!(spec.validate(&p).is_err());
        let mut spec = QuadSpec::for_params(&p);
        spec.panels_per_period = 8;
        assert!(spec.validate(&p).is_err());
    }

    #[test]
    fn e1_ray_quadrature() {
        let z = ComplexValue::new(1.0, 0.0);
        assert!((quad_e1(z).unwrap().re - 0.219_383_934_395_520_3).abs() < 1e-12);
    }
}
