//! Direct RK4 integration of the Markovian qubit equations.

use serde::Serialize;

use crate::amplitudes::QubitState;
use crate::error::{Result, WqedError};
use crate::model::{CollectiveRates, ModelParams};
use crate::ComplexValue;

/// Step-doubling local error bound.
pub const STEP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeSpec {
    pub dt: f64,
    pub t_end: f64,
}

impl OdeSpec {
    /// Largest admissible step, `0.01/max(Γ, |Ω − ω_S|)`.
    pub fn max_step(params: &ModelParams) -> f64 {
        0.01 / params.gamma().max((params.omega_q() - params.omega_s()).abs())
    }
}

struct System {
    half_gamma: f64,
    phase_q: ComplexValue,
    drive: ComplexValue,
    phase_s: ComplexValue,
    detuning: f64,
}

impl System {
    fn rhs(&self, t: f64, y: [ComplexValue; 2]) -> [ComplexValue; 2] {
        let f1 = self.drive * ComplexValue::cis(self.detuning * t);
        let f2 = f1 * self.phase_s;
        [
            f1 - self.half_gamma * (y[0] + self.phase_q * y[1]),
            f2 - self.half_gamma * (y[1] + self.phase_q * y[0]),
        ]
    }

    fn rk4(&self, t: f64, y: [ComplexValue; 2], h: f64) -> [ComplexValue; 2] {
        let add = |a: [ComplexValue; 2], k: [ComplexValue; 2], s: f64| [a[0] + s * k[0], a[1] + s * k[1]];
        let k1 = self.rhs(t, y);
        let k2 = self.rhs(t + 0.5 * h, add(y, k1, 0.5 * h));
        let k3 = self.rhs(t + 0.5 * h, add(y, k2, 0.5 * h));
        let k4 = self.rhs(t + h, add(y, k3, h));
        [
            y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ]
    }
}

/// Integrates `β₁, β₂` from zero at `t = 0`, recording the state after every step.
///
/// Damping and drive use the phases stored in `rates`, so the snapped `nπ`
/// regimes are integrated with exactly `±1` cross damping.
pub fn integrate_markov(rates: &CollectiveRates, params: &ModelParams, spec: &OdeSpec) -> Result<Vec<QubitState>> {
    let limit = OdeSpec::max_step(params);
    if !(spec.dt > 0.0 && spec.dt <= limit * (1.0 + 1e-12)) {
        return Err(WqedError::InvalidParams(format!(
            "ODE step {:e} outside (0, {limit:e}]",
            spec.dt
        )));
    }
    if !(spec.t_end >= 0.0 && spec.t_end.is_finite()) {
        return Err(WqedError::InvalidParams("t_end must be finite and nonnegative".into()));
    }
    let sys = System {
        half_gamma: 0.5 * params.gamma(),
        phase_q: rates.phase_q,
        drive: -ComplexValue::i() * params.coupling_g() * params.amplitude_a(),
        phase_s: rates.phase_s,
        detuning: params.omega_q() - params.omega_s(),
    };
    let steps = (spec.t_end / spec.dt).ceil() as usize;
    let h = if steps == 0 { 0.0 } else { spec.t_end / steps as f64 };
    let zero = ComplexValue::new(0.0, 0.0);
    let mut y = [zero, zero];
    let mut out = Vec::with_capacity(steps + 1);
    out.push(QubitState { beta1: zero, beta2: zero, t: 0.0 });
    for k in 0..steps {
        let t = k as f64 * h;
        let full = sys.rk4(t, y, h);
        let mid = sys.rk4(t, y, 0.5 * h);
        let half = sys.rk4(t + 0.5 * h, mid, 0.5 * h);
        let scale = half[0].norm().max(half[1].norm()).max(1.0);
        let estimate = ((half[0] - full[0]).norm().max((half[1] - full[1]).norm())) / 15.0 / scale;
        if estimate > STEP_TOLERANCE {
            return Err(WqedError::StepRejected {
                t,
                estimate,
                limit: STEP_TOLERANCE,
            });
        }
        y = half;
        out.push(QubitState {
            beta1: y[0],
            beta2: y[1],
            t: (k + 1) as f64 * h,
        });
    }
    Ok(out)
}
