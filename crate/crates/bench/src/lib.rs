//! Shared scenarios for the benchmarks.

use std::f64::consts::PI;

use wqed_core::ModelParams;

/// `Ω/2π = 5 GHz`, `Γ/Ω = 0.01`, `v_g = 3e8 m/s`, bandwidth `1e-3 Ω`.
pub fn scenario(distance: f64, detune: f64) -> ModelParams {
    let w = 2.0 * PI * 5.0e9;
    ModelParams::new(w, 0.01 * w, distance, 3.0e8, w * (1.0 + detune), 1e-3 * w)
        .expect("benchmark scenario is valid")
}
