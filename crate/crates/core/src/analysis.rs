//! Beat-frequency extraction from uniformly sampled series.

use std::f64::consts::PI;

use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Result, WqedError};
use crate::fields::steady_forward;
use crate::model::{CollectiveRates, ModelParams};
use crate::ComplexValue;

/// Number of beat periods sampled for a beating series.
pub const BEAT_PERIODS: usize = 40;

/// Dominant nonzero spectral line of a real series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeatReport {
    /// Index of the peak bin.
    pub bin: usize,
    pub frequency_hz: f64,
    pub bin_width_hz: f64,
    pub period_s: f64,
    /// Single-sided amplitude of the line.
    pub amplitude: f64,
}

/// Finds the dominant nonzero frequency of `samples` taken every `dt` seconds.
///
/// Returns `None` when the mean-removed series is flat to rounding.
pub fn beat_report(samples: &[f64], dt: f64) -> Result<Option<BeatReport>> {
    let n = samples.len();
    if n < 4 || !(dt.is_finite() && dt > 0.0) {
        return Err(WqedError::InvalidParams(format!(
            "need at least 4 samples and dt > 0, got {n} samples, dt = {dt}"
        )));
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let mut buffer: Vec<ComplexValue> = samples
        .iter()
        .map(|&s| ComplexValue::new(s - mean, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buffer);
    let (bin, peak) = buffer[1..=n / 2]
        .iter()
        .enumerate()
        .map(|(k, c)| (k + 1, c.norm()))
        .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    let amplitude = 2.0 * peak / n as f64;
    let scale = samples.iter().fold(0.0f64, |m, s| m.max(s.abs()));
    if bin == 0 || amplitude <= 1e-9 * scale.max(f64::MIN_POSITIVE) {
        return Ok(None);
    }
    let bin_width_hz = 1.0 / (n as f64 * dt);
    let frequency_hz = bin as f64 * bin_width_hz;
    Ok(Some(BeatReport {
        bin,
        frequency_hz,
        bin_width_hz,
        period_s: 1.0 / frequency_hz,
        amplitude,
    }))
}

/// `|u_steady(x₀, t)|²/A²` over `BEAT_PERIODS` beat periods, `samples_per_period`
/// samples each. With zero detuning the window defaults to 40 periods of `2π/Ω`.
pub fn beating_series(
    x0: f64,
    rates: &CollectiveRates,
    params: &ModelParams,
    samples_per_period: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let detuning = (params.omega_s() - params.omega_q()).abs();
    let angular = if detuning > 0.0 { detuning } else { params.omega_q() };
    let period = 2.0 * PI / angular;
    let n = BEAT_PERIODS * samples_per_period.max(4);
    let dt = BEAT_PERIODS as f64 * period / n as f64;
    let a2 = params.amplitude_a().powi(2);
    let ts: Vec<f64> = (0..n).map(|k| k as f64 * dt).collect();
    let energies = ts
        .iter()
        .map(|&t| Ok(steady_forward(x0, t, rates, params)?.norm_sqr() / a2))
        .collect::<Result<Vec<_>>>()?;
    Ok((ts, energies))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_tone_lands_on_its_bin() {
        let n = 640;
        let dt = 1e-3;
        let f = 25.0 / (n as f64 * dt);
        let s: Vec<f64> = (0..n)
            .map(|k| 3.0 + 0.5 * (2.0 * PI * f * k as f64 * dt).cos())
            .collect();
        let r = beat_report(&s, dt).unwrap().unwrap();
        assert_eq!(r.bin, 25);
        assert!((r.amplitude - 0.5).abs() < 1e-12);
    }

    #[test]
    fn constant_series_has_no_peak() {
        assert!(beat_report(&[2.0; 64], 1.0).unwrap().is_none());
        assert!(beat_report(&[1.0; 2], 1.0).is_err());
    }
}
