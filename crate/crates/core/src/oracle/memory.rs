//! Memory integrals of the exact qubit equations, checked against their Markov limits.
//!
//! With flat coupling `g` on `[0, ω_max]` and `M(ω, t) = ∫₀ᵗ e^{−i(ω−Ω)τ} dτ = −iφ(Ω − ω, t)`,
//! `K_self(t) = 2g² ∫ M dω` and `K_cross(t) = g² ∫ M (e^{ikd} + e^{−ikd}) dω`.
//! For `t ≫ 1/Ω` and `t > d/v_g`, `Re K_self → Γ/2` and `K_cross → (Γ/2)e^{ik_Ω d}`.

use std::f64::consts::PI;

use serde::Serialize;

use super::quadrature::composite_gl;
use crate::amplitudes::phi;
use crate::error::{Result, WqedError};
use crate::model::ModelParams;
use crate::ComplexValue;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MemoryKernels {
    pub t: f64,
    pub k_self: ComplexValue,
    pub k_cross: ComplexValue,
    /// `Γ/2` and `(Γ/2)e^{ik_Ω d}` for comparison.
    pub markov_self: f64,
    pub markov_cross: ComplexValue,
}

impl MemoryKernels {
    /// Worst deviation from the Markov limits relative to `Γ/2`.
    pub fn relative_deviation(&self) -> f64 {
        let self_dev = (self.k_self.re - self.markov_self).abs();
        let cross_dev = (self.k_cross - self.markov_cross).norm();
        self_dev.max(cross_dev) / self.markov_self
    }
}

/// Evaluates both memory integrals at time `t` with cutoff `omega_max`.
pub fn memory_kernels(params: &ModelParams, t: f64, omega_max: f64) -> Result<MemoryKernels> {
    if !(t > params.transit_time()) {
        return Err(WqedError::Causality(format!(
            "memory check needs t > d/v_g = {:e}, got {t:e}",
            params.transit_time()
        )));
    }
    let omega = params.omega_q();
    if !(omega_max >= 2.0 * omega) {
        return Err(WqedError::InvalidParams("omega_max must exceed 2Ω".into()));
    }
    let g2 = params.coupling_g().powi(2);
    let tau = params.transit_time();
    let fastest = t.max(tau + t);
    let panels = ((omega_max * fastest / (2.0 * PI)) * 16.0).ceil() as usize;
    let memory = |w: f64| -ComplexValue::i() * phi(ComplexValue::new(omega - w, 0.0), t);
    let k_self = 2.0 * g2 * composite_gl(memory, 0.0, omega_max, panels);
    let k_cross = g2
        * composite_gl(
            |w| memory(w) * 2.0 * (w * tau).cos(),
            0.0,
            omega_max,
            panels,
        );
    let half = 0.5 * params.gamma();
    Ok(MemoryKernels {
        t,
        k_self,
        k_cross,
        markov_self: half,
        markov_cross: half * ComplexValue::cis(params.phase_q()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn causality_enforced() {
        let w = 2.0 * PI * 5.0e9;
        let p = ModelParams::with_phase(w, 0.01 * w, 5.0 * PI / 2.0, 3.0e8, w, 1e-3 * w).unwrap();
        assert!(memory_kernels(&p, 0.5 * p.transit_time(), 20.0 * w).is_err());
    }
}
