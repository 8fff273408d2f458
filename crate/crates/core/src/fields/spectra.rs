//! Transmittance and reflectance, Markov and retarded.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, WqedError};
use crate::model::{rates_for, CollectiveRates, ModelParams};
use crate::ComplexValue;

/// Markov transmittance for the photon frequency stored in `params`.
pub fn transmittance_from_rates(rates: &CollectiveRates, params: &ModelParams) -> f64 {
    let back = rates.phase_s.conj();
    let sum = rates.c_plus * (1.0 + back) + rates.c_minus * (1.0 - back);
    let scale = params.coupling_g() / (2.0 * params.amplitude_a());
    (1.0 + scale * 2.0 * PI * ComplexValue::i() * sum).norm_sqr()
}

/// Markov reflectance for the photon frequency stored in `params`.
pub fn reflectance_from_rates(rates: &CollectiveRates, params: &ModelParams) -> f64 {
    let fwd = rates.phase_s;
    let sum = rates.c_plus * (1.0 + fwd) + rates.c_minus * (1.0 - fwd);
    params.gamma() * PI / (4.0 * params.amplitude_a().powi(2)) * sum.norm_sqr()
}

fn check_probe(omega: f64) -> Result<()> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(WqedError::InvalidParams(format!(
            "probe frequency must be finite and positive, got {omega}"
        )));
    }
    Ok(())
}

/// Markov transmittance `|u(x→∞, t→∞)|²/A²` at `ω_S = omega_probe`.
pub fn transmittance(omega_probe: f64, params: &ModelParams) -> Result<f64> {
    check_probe(omega_probe)?;
    let p = params.with_omega_s(omega_probe)?;
    Ok(transmittance_from_rates(&rates_for(&p), &p))
}

/// Markov reflectance `|v(x→−∞, t→∞)|²/A²` at `ω_S = omega_probe`.
pub fn reflectance(omega_probe: f64, params: &ModelParams) -> Result<f64> {
    check_probe(omega_probe)?;
    let p = params.with_omega_s(omega_probe)?;
    Ok(reflectance_from_rates(&rates_for(&p), &p))
}

/// Shared denominator `(ω − Ω + iΓ/2)² + (Γ²/4) e^{2ik_ω d}`, or `None` at the
/// removable `0/0` point `ω = Ω` with `k_ω d = nπ`.
fn retarded_denominator(omega: f64, params: &ModelParams) -> Option<ComplexValue> {
    let g = params.gamma();
    let dw = omega - params.omega_q();
    let phase2 = ComplexValue::cis(2.0 * params.k_of(omega) * params.distance());
    let den = (dw + ComplexValue::i() * 0.5 * g).powi(2) + 0.25 * g * g * phase2;
    (den.norm() > 1e-24 * g * g).then_some(den)
}

/// Retarded (non-Markovian) transmittance `|T|²`.
pub fn nonmarkov_transmittance(omega: f64, params: &ModelParams) -> Result<f64> {
    check_probe(omega)?;
    let dw = omega - params.omega_q();
    Ok(match retarded_denominator(omega, params) {
        Some(den) => (dw * dw / den).norm_sqr(),
        None => 0.0,
    })
}

/// Retarded (non-Markovian) reflectance `|R|²`.
pub fn nonmarkov_reflectance(omega: f64, params: &ModelParams) -> Result<f64> {
    check_probe(omega)?;
    let g = params.gamma();
    let dw = omega - params.omega_q();
    let kd = params.k_of(omega) * params.distance();
    Ok(match retarded_denominator(omega, params) {
        Some(den) => g * g * ((dw * kd.cos() + 0.5 * g * kd.sin()) / den).norm_sqr(),
        None => 1.0,
    })
}

/// One row of a transmission/reflection sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub omega: f64,
    pub t_markov: f64,
    pub r_markov: f64,
    pub t_nonmarkov: f64,
    pub r_nonmarkov: f64,
}

impl SpectrumRow {
    /// Flux defect `T + R − 1` of the Markov pair.
    pub fn flux_defect(&self) -> f64 {
        self.t_markov + self.r_markov - 1.0
    }
}

/// Evaluates all four curves at each probe frequency, in input order.
pub fn spectrum_sweep(params: &ModelParams, omegas: &[f64]) -> Result<Vec<SpectrumRow>> {
    omegas
        .par_iter()
        .map(|&omega| {
            Ok(SpectrumRow {
                omega,
                t_markov: transmittance(omega, params)?,
                r_markov: reflectance(omega, params)?,
                t_nonmarkov: nonmarkov_transmittance(omega, params)?,
                r_nonmarkov: nonmarkov_reflectance(omega, params)?,
            })
        })
        .collect()
}

/// Largest `|T − T_nm|` and `|R − R_nm|` over a sweep.
pub fn sup_differences(rows: &[SpectrumRow]) -> (f64, f64) {
    rows.iter().fold((0.0, 0.0), |(dt, dr), r| {
        (
            f64::max(dt, (r.t_markov - r.t_nonmarkov).abs()),
            f64::max(dr, (r.r_markov - r.r_nonmarkov).abs()),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(ratio: f64, kd: f64) -> ModelParams {
        let w = 2.0 * PI * 5.0e9;
        ModelParams::with_phase(w, ratio * w, kd, 3.0e8, w, 1e-3 * w).unwrap()
    }

    #[test]
    fn resonance_is_exact() {
        for kd in [PI / 2.0, PI, 2.0 * PI, 5.0 * PI, 0.37] {
            let p = params(0.01, kd);
            let w = p.omega_q();
            assert!(transmittance(w, &p).unwrap().abs() < 1e-12, "kd={kd}");
            assert!((reflectance(w, &p).unwrap() - 1.0).abs() < 1e-12, "kd={kd}");
            assert!(nonmarkov_transmittance(w, &p).unwrap().abs() < 1e-12);
            assert!((nonmarkov_reflectance(w, &p).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn far_detuned_limits() {
        let p = params(0.01, PI / 2.0);
        for sign in [1.0, -1.0] {
            let w = p.omega_q() + sign * 30.0 * p.gamma();
            assert!((transmittance(w, &p).unwrap() - 1.0).abs() < 0.01);
            assert!(reflectance(w, &p).unwrap() < 0.01);
            assert!((nonmarkov_transmittance(w, &p).unwrap() - 1.0).abs() < 0.01);
        }
    }

    #[test]
    fn retarded_curves_conserve_flux() {
        let p = params(0.1, 5.0 * PI);
        for k in 0..200 {
            let w = p.omega_q() * (0.7 + 0.003 * k as f64);
            let t = nonmarkov_transmittance(w, &p).unwrap();
            let r = nonmarkov_reflectance(w, &p).unwrap();
            assert!((t + r - 1.0).abs() < 1e-12, "w={w}");
        }
    }

    #[test]
    fn rejects_bad_probe() {
        let p = params(0.01, PI / 2.0);
        assert!(transmittance(0.0, &p).is_err());
        assert!(nonmarkov_reflectance(f64::NAN, &p).is_err());
    }
}
