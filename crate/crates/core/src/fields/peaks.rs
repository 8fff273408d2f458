//! Resonance-peak energies (`ω_S = Ω`, `t → ∞`) as functions of position.
//!
//! The generic forms hold for `k_Ω d ≠ nπ`; the `_even` forms for `k_Ω d = 2mπ`.
//! The quadratic coefficient of the `_even` forms is `1/(16π²)`: on resonance
//! the lossless channel drops out and the two surviving drive kernels each
//! carry half the weight of the single-kernel generic case.

use std::f64::consts::PI;

use super::grid::{locate, Region};
use crate::error::{Result, WqedError};
use crate::model::ModelParams;
use crate::specfun::ci_si;

fn require(region: Region, x: f64, params: &ModelParams, name: &'static str) -> Result<()> {
    let found = locate(x, params)?;
    if found != region {
        return Err(WqedError::Region {
            field: name,
            region: found.to_string(),
        });
    }
    Ok(())
}

/// Transmitted peak energy behind the second qubit, generic geometry.
pub fn transmitted_peak_generic(x: f64, params: &ModelParams) -> Result<f64> {
    require(Region::Behind, x, params, "transmitted peak")?;
    let (ci, si) = ci_si(params.k_omega_q() * x)?;
    Ok((ci * ci + si * si) / (4.0 * PI * PI))
}

/// Reflected peak energy in front of the first qubit, generic geometry.
pub fn reflected_peak_generic(x: f64, params: &ModelParams) -> Result<f64> {
    require(Region::Before, x, params, "reflected peak")?;
    let (ci, si) = ci_si(params.k_omega_q() * x.abs())?;
    Ok(1.0 + si / PI + (ci * ci + si * si) / (4.0 * PI * PI))
}

/// Peak energy `|u + v|²/A²` between the qubits, generic geometry.
pub fn interqubit_peak_generic(x: f64, params: &ModelParams) -> Result<f64> {
    require(Region::Between, x, params, "interqubit peak")?;
    let phase = params.k_omega_q() * x;
    let (ci, si) = ci_si(phase)?;
    let (s, c) = phase.sin_cos();
    let amp = ci * c + si * s;
    Ok(amp * amp / (PI * PI))
}

fn even_sums(x: f64, params: &ModelParams) -> Result<(f64, f64)> {
    let k = params.k_omega_q();
    let (ci1, si1) = ci_si(k * x.abs())?;
    let (ci2, si2) = ci_si(k * (x - params.distance()).abs())?;
    Ok((ci1 + ci2, si1 + si2))
}

/// Transmitted peak energy behind the second qubit for `k_Ω d = 2mπ`.
pub fn transmitted_peak_even(x: f64, params: &ModelParams) -> Result<f64> {
    require(Region::Behind, x, params, "transmitted peak")?;
    let (ci, si) = even_sums(x, params)?;
    Ok((ci * ci + si * si) / (16.0 * PI * PI))
}

/// Reflected peak energy in front of the first qubit for `k_Ω d = 2mπ`.
pub fn reflected_peak_even(x: f64, params: &ModelParams) -> Result<f64> {
    require(Region::Before, x, params, "reflected peak")?;
    let (ci, si) = even_sums(x, params)?;
    Ok(1.0 + si / (2.0 * PI) + (ci * ci + si * si) / (16.0 * PI * PI))
}
