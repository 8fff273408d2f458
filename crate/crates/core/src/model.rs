//! Scenario parameters, regime classification and collective quantities.

use std::f64::consts::PI;

use log::warn;
use serde::Serialize;

use crate::error::{Result, WqedError};
use crate::ComplexValue;

/// Default tolerance on `k_Ω d mod π` for snapping to the `nπ` formula sets.
pub const DEFAULT_REGIME_TOL: f64 = 1e-9;

/// `Γ/Ω` above which the Markov treatment is flagged as questionable.
pub const GAMMA_RATIO_WARN: f64 = 0.1;

/// Hard upper bound on `Γ/Ω`.
pub const GAMMA_RATIO_MAX: f64 = 0.5;

/// Physical constants of one scattering scenario, SI units throughout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    omega_q: f64,
    gamma: f64,
    distance: f64,
    v_g: f64,
    omega_s: f64,
    delta_bw: f64,
    amplitude_a: f64,
}

impl ModelParams {
    /// Validates and builds a parameter set.
    ///
    /// `omega_q`, `gamma`, `omega_s`, `delta_bw` in rad/s, `distance` in m, `v_g` in m/s.
    pub fn new(
        omega_q: f64,
        gamma: f64,
        distance: f64,
        v_g: f64,
        omega_s: f64,
        delta_bw: f64,
    ) -> Result<Self> {
        for (name, value) in [
            ("omega_q", omega_q),
            ("gamma", gamma),
            ("distance", distance),
            ("v_g", v_g),
            ("omega_s", omega_s),
            ("delta_bw", delta_bw),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(WqedError::InvalidParams(format!(
                    "{name} must be finite and positive, got {value}"
                )));
            }
        }
        let ratio = gamma / omega_q;
        if ratio >= GAMMA_RATIO_MAX {
            return Err(WqedError::InvalidParams(format!(
                "gamma/omega_q = {ratio} violates the weak-coupling bound {GAMMA_RATIO_MAX}"
            )));
        }
        if ratio > GAMMA_RATIO_WARN {
            warn!("gamma/omega_q = {ratio:.3} exceeds {GAMMA_RATIO_WARN}; Markov results are approximate");
        }
        Ok(Self {
            omega_q,
            gamma,
            distance,
            v_g,
            omega_s,
            delta_bw,
            amplitude_a: (2.0 * PI).powf(0.25) * delta_bw.sqrt(),
        })
    }

    /// Builds parameters from the coupling constant `g(Ω)` instead of `Γ`, using `Γ = 4πg²`.
    pub fn from_coupling(
        omega_q: f64,
        coupling_g: f64,
        distance: f64,
        v_g: f64,
        omega_s: f64,
        delta_bw: f64,
    ) -> Result<Self> {
        Self::new(
            omega_q,
            4.0 * PI * coupling_g * coupling_g,
            distance,
            v_g,
            omega_s,
            delta_bw,
        )
    }

    /// Builds parameters with the separation given through the phase `k_Ω d`.
    pub fn with_phase(
        omega_q: f64,
        gamma: f64,
        k_omega_d: f64,
        v_g: f64,
        omega_s: f64,
        delta_bw: f64,
    ) -> Result<Self> {
        if !(k_omega_d.is_finite() && k_omega_d > 0.0) {
            return Err(WqedError::InvalidParams(format!(
                "k_omega_d must be finite and positive, got {k_omega_d}"
            )));
        }
        Self::new(omega_q, gamma, k_omega_d * v_g / omega_q, v_g, omega_s, delta_bw)
    }

    /// Same scenario probed at another photon frequency.
    pub fn with_omega_s(&self, omega_s: f64) -> Result<Self> {
        Self::new(
            self.omega_q,
            self.gamma,
            self.distance,
            self.v_g,
            omega_s,
            self.delta_bw,
        )
    }

    pub fn omega_q(&self) -> f64 {
        self.omega_q
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn distance(&self) -> f64 {
        self.distance
    }

    pub fn v_g(&self) -> f64 {
        self.v_g
    }

    pub fn omega_s(&self) -> f64 {
        self.omega_s
    }

    pub fn delta_bw(&self) -> f64 {
        self.delta_bw
    }

    /// Incident amplitude `A = (2π)^{1/4} √Δ`.
    pub fn amplitude_a(&self) -> f64 {
        self.amplitude_a
    }

    /// Coupling `g = √(Γ/4π)`.
    pub fn coupling_g(&self) -> f64 {
        (self.gamma / (4.0 * PI)).sqrt()
    }

    /// `k_Ω = Ω/v_g`.
    pub fn k_omega_q(&self) -> f64 {
        self.omega_q / self.v_g
    }

    /// `k_ω = ω/v_g`.
    pub fn k_of(&self, omega: f64) -> f64 {
        omega / self.v_g
    }

    /// `k_Ω d`.
    pub fn phase_q(&self) -> f64 {
        self.k_omega_q() * self.distance
    }

    /// Travel time between the qubits, `d/v_g`.
    pub fn transit_time(&self) -> f64 {
        self.distance / self.v_g
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RegimeTag {
    /// `k_Ω d` away from any multiple of π.
    Generic,
    /// `k_Ω d = 2mπ`: the antisymmetric channel is lossless.
    EvenPi,
    /// `k_Ω d = (2m+1)π`: the symmetric channel is lossless.
    OddPi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Regime {
    pub tag: RegimeTag,
    /// Multiple of π, meaningful only when `tag` is not `Generic`.
    pub n: i64,
}

impl Regime {
    pub const GENERIC: Regime = Regime {
        tag: RegimeTag::Generic,
        n: 0,
    };
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.tag {
            RegimeTag::Generic => write!(f, "generic"),
            RegimeTag::EvenPi => write!(f, "even-pi(n={})", self.n),
            RegimeTag::OddPi => write!(f, "odd-pi(n={})", self.n),
        }
    }
}

/// Detects whether `k_Ω d` sits within `tol` of a multiple of π.
pub fn classify_regime(params: &ModelParams, tol: f64) -> Regime {
    let kd = params.phase_q();
    let n = (kd / PI).round();
    if (kd - n * PI).abs() < tol {
        let n = n as i64;
        let tag = if n % 2 == 0 {
            RegimeTag::EvenPi
        } else {
            RegimeTag::OddPi
        };
        Regime { tag, n }
    } else {
        Regime::GENERIC
    }
}

/// Collective decay rates and drive couplings of the symmetric (+) and antisymmetric (−) channels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CollectiveRates {
    pub gamma_plus: ComplexValue,
    pub gamma_minus: ComplexValue,
    pub c_plus: ComplexValue,
    pub c_minus: ComplexValue,
    pub regime: Regime,
    /// `e^{i k_Ω d}`, snapped to ±1 in the `nπ` regimes.
    pub phase_q: ComplexValue,
    /// `e^{i k_{ω_S} d}`.
    pub phase_s: ComplexValue,
}

impl CollectiveRates {
    /// `Ω₊ = Ω − iΓ₊`.
    pub fn omega_plus(&self, params: &ModelParams) -> ComplexValue {
        params.omega_q - ComplexValue::i() * self.gamma_plus
    }

    /// `Ω₋ = Ω − iΓ₋`.
    pub fn omega_minus(&self, params: &ModelParams) -> ComplexValue {
        params.omega_q - ComplexValue::i() * self.gamma_minus
    }

    /// Channel rate, `+` for `plus = true`.
    pub fn rate(&self, plus: bool) -> ComplexValue {
        if plus {
            self.gamma_plus
        } else {
            self.gamma_minus
        }
    }

    /// Channel coupling, `+` for `plus = true`.
    pub fn coupling(&self, plus: bool) -> ComplexValue {
        if plus {
            self.c_plus
        } else {
            self.c_minus
        }
    }

    /// Whether a channel is exactly lossless (snapped `nπ` regime).
    pub fn is_lossless(&self, plus: bool) -> bool {
        self.rate(plus) == ComplexValue::new(0.0, 0.0)
    }

    /// Slowest nonzero decay rate, `min Re Γ±` over the lossy channels.
    pub fn slowest_decay(&self) -> f64 {
        [self.gamma_plus.re, self.gamma_minus.re]
            .into_iter()
            .filter(|r| *r > 0.0)
            .fold(f64::INFINITY, f64::min)
    }
}

/// `(e^{iκ} − 1)/κ`, exact and finite at `κ = 0`.
fn phase_quotient(kappa: f64) -> ComplexValue {
    if kappa == 0.0 {
        return ComplexValue::i();
    }
    let half = (0.5 * kappa).sin();
    ComplexValue::new(-2.0 * half * half, kappa.sin()) / kappa
}

/// Computes `Γ±` and `C±` for the given regime.
pub fn collective_rates(params: &ModelParams, regime: Regime) -> CollectiveRates {
    let half_gamma = 0.5 * params.gamma;
    let ag = params.amplitude_a * params.coupling_g();
    let detuning = params.omega_q - params.omega_s;
    let i = ComplexValue::i();
    match regime.tag {
        RegimeTag::Generic => {
            let phase_q = ComplexValue::cis(params.phase_q());
            let phase_s = ComplexValue::cis(params.k_of(params.omega_s) * params.distance);
            let gamma_plus = half_gamma * (1.0 + phase_q);
            let gamma_minus = half_gamma * (1.0 - phase_q);
            CollectiveRates {
                gamma_plus,
                gamma_minus,
                c_plus: ag * (1.0 + phase_s) / (detuning - i * gamma_plus),
                c_minus: ag * (1.0 - phase_s) / (detuning - i * gamma_minus),
                regime,
                phase_q,
                phase_s,
            }
        }
        RegimeTag::EvenPi | RegimeTag::OddPi => {
            let sign = if regime.tag == RegimeTag::EvenPi {
                1.0
            } else {
                -1.0
            };
            // k_S d = nπ + κ exactly, with κ = (ω_S − Ω) d / v_g.
            let kappa = (params.omega_s - params.omega_q) * params.transit_time();
            let phase_s = sign * ComplexValue::cis(kappa);
            let phase_q = ComplexValue::new(sign, 0.0);
            let gamma_full = ComplexValue::new(params.gamma, 0.0);
            let zero = ComplexValue::new(0.0, 0.0);
            let lossless = ag * params.transit_time() * phase_quotient(kappa);
            if sign > 0.0 {
                CollectiveRates {
                    gamma_plus: gamma_full,
                    gamma_minus: zero,
                    c_plus: ag * (1.0 + phase_s) / (detuning - i * gamma_full),
                    c_minus: lossless,
                    regime,
                    phase_q,
                    phase_s,
                }
            } else {
                CollectiveRates {
                    gamma_plus: zero,
                    gamma_minus: gamma_full,
                    c_plus: lossless,
                    c_minus: ag * (1.0 - phase_s) / (detuning - i * gamma_full),
                    regime,
                    phase_q,
                    phase_s,
                }
            }
        }
    }
}

/// Classifies with the default tolerance and computes the collective rates.
pub fn rates_for(params: &ModelParams) -> CollectiveRates {
    collective_rates(params, classify_regime(params, DEFAULT_REGIME_TOL))
}
