//! Field assembly from the kernel table.
//!
//! Both travelling waves share one table. For a forward wave the scattered
//! part is
//!
//! ```text
//! u₁ = −(g/2) C₊ [K₊(x) + K₊(x−d) − K_S(x) − K_S(x−d)]
//!      −(g/2) C₋ [K₋(x) − K₋(x−d) − K_S(x) + K_S(x−d)]
//! ```
//!
//! with `K±` the kernel at `Ω±` and `K_S` the kernel at `ω_S`. The backward
//! wave uses the same table with the backward `σ`. A lossless channel
//! (`Γ± = 0` in the `nπ` regimes) has its decaying kernel replaced by the
//! resonant one at `Ω`, which is what a real `Ω±` does automatically.

use rayon::prelude::*;
use serde::Serialize;

use super::grid::{locate, Region, SpaceTimeGrid};
use super::kernels::{kernel, kernel_steady, Direction};
use crate::error::{Result, WqedError};
use crate::model::{CollectiveRates, ModelParams, Regime};
use crate::ComplexValue;

/// Convergence thresholds for treating a sample as steady.
pub const STEADY_EXP_THRESHOLD: f64 = 1e-8;
pub const STEADY_TAIL_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    /// Full time-dependent closed form.
    Transient,
    /// `t → ∞` closed form.
    SteadyState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shift {
    X,
    XMinusD,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum KernelKind {
    Decay,
    Drive,
}

#[derive(Debug, Clone, Copy)]
struct Term {
    plus: bool,
    kind: KernelKind,
    shift: Shift,
    sign: f64,
}

const fn term(plus: bool, kind: KernelKind, shift: Shift, sign: f64) -> Term {
    Term { plus, kind, shift, sign }
}

const TERMS: [Term; 8] = [
    term(true, KernelKind::Decay, Shift::X, 1.0),
    term(true, KernelKind::Decay, Shift::XMinusD, 1.0),
    term(true, KernelKind::Drive, Shift::X, -1.0),
    term(true, KernelKind::Drive, Shift::XMinusD, -1.0),
    term(false, KernelKind::Decay, Shift::X, 1.0),
    term(false, KernelKind::Decay, Shift::XMinusD, -1.0),
    term(false, KernelKind::Drive, Shift::X, -1.0),
    term(false, KernelKind::Drive, Shift::XMinusD, 1.0),
];

/// One entry of the assembly table resolved for a scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelTerm {
    /// Complex weight multiplying the kernel.
    pub weight: ComplexValue,
    /// Kernel frequency `c`.
    pub frequency: ComplexValue,
    /// Spatial shift, `0` or `d`.
    pub shift: f64,
}

/// Resolves the assembly table into weights, frequencies and shifts.
pub fn kernel_terms(rates: &CollectiveRates, params: &ModelParams) -> [KernelTerm; 8] {
    let half_g = 0.5 * params.coupling_g();
    TERMS.map(|t| {
        let frequency = match t.kind {
            KernelKind::Drive => ComplexValue::new(params.omega_s(), 0.0),
            KernelKind::Decay => {
                if t.plus {
                    rates.omega_plus(params)
                } else {
                    rates.omega_minus(params)
                }
            }
        };
        KernelTerm {
            weight: -half_g * t.sign * rates.coupling(t.plus),
            frequency,
            shift: match t.shift {
                Shift::X => 0.0,
                Shift::XMinusD => params.distance(),
            },
        }
    })
}

/// Scattered part of a travelling wave at `(x, t)`.
pub fn scattered_wave(
    direction: Direction,
    x: f64,
    t: f64,
    rates: &CollectiveRates,
    params: &ModelParams,
    branch: Branch,
) -> Result<ComplexValue> {
    let mut sum = ComplexValue::new(0.0, 0.0);
    for term in kernel_terms(rates, params) {
        let sigma = direction.sigma(x - term.shift, params.v_g());
        let k = match branch {
            Branch::Transient => kernel(sigma, t, term.frequency)?,
            Branch::SteadyState => kernel_steady(sigma, t, term.frequency)?,
        };
        sum += term.weight * k;
    }
    Ok(sum)
}

/// Incident plane wave `u₀ = A e^{iω_S(x − v_g t)/v_g}`.
pub fn incident_wave(x: f64, t: f64, params: &ModelParams) -> ComplexValue {
    params.amplitude_a() * ComplexValue::cis(params.omega_s() * (x / params.v_g() - t))
}

/// Forward field `u = u₀ + u₁` at one point, `x` between or behind the qubits.
pub fn forward_at(
    x: f64,
    t: f64,
    rates: &CollectiveRates,
    params: &ModelParams,
    branch: Branch,
) -> Result<ComplexValue> {
    let region = locate(x, params)?;
    if region == Region::Before {
        return Err(WqedError::Region {
            field: "forward",
            region: region.to_string(),
        });
    }
    Ok(incident_wave(x, t, params) + scattered_wave(Direction::Forward, x, t, rates, params, branch)?)
}

/// Backward field `v` at one point, `x` before or between the qubits.
pub fn backward_at(
    x: f64,
    t: f64,
    rates: &CollectiveRates,
    params: &ModelParams,
    branch: Branch,
) -> Result<ComplexValue> {
    let region = locate(x, params)?;
    if region == Region::Behind {
        return Err(WqedError::Region {
            field: "backward",
            region: region.to_string(),
        });
    }
    scattered_wave(Direction::Backward, x, t, rates, params, branch)
}

/// Total field `w = u + v` between the qubits.
pub fn interqubit_at(
    x: f64,
    t: f64,
    rates: &CollectiveRates,
    params: &ModelParams,
    branch: Branch,
) -> Result<ComplexValue> {
    let region = locate(x, params)?;
    if region != Region::Between {
        return Err(WqedError::Region {
            field: "interqubit",
            region: region.to_string(),
        });
    }
    Ok(forward_at(x, t, rates, params, branch)? + backward_at(x, t, rates, params, branch)?)
}

/// `t → ∞` forward field behind the second qubit, carrier phases retained.
pub fn steady_forward(x: f64, t: f64, rates: &CollectiveRates, params: &ModelParams) -> Result<ComplexValue> {
    if locate(x, params)? != Region::Behind {
        return Err(WqedError::Region {
            field: "steady forward",
            region: locate(x, params)?.to_string(),
        });
    }
    forward_at(x, t, rates, params, Branch::SteadyState)
}

/// `t → ∞` backward field in front of the first qubit.
pub fn steady_backward(x: f64, t: f64, rates: &CollectiveRates, params: &ModelParams) -> Result<ComplexValue> {
    if locate(x, params)? != Region::Before {
        return Err(WqedError::Region {
            field: "steady backward",
            region: locate(x, params)?.to_string(),
        });
    }
    backward_at(x, t, rates, params, Branch::SteadyState)
}

/// Whether the transient terms at `(x, t)` are below the steady-state thresholds
/// for a wave travelling in `direction`.
pub fn transients_converged(
    direction: Direction,
    x: f64,
    t: f64,
    rates: &CollectiveRates,
    params: &ModelParams,
) -> bool {
    let v_g = params.v_g();
    let min_s = [x, x - params.distance()]
        .into_iter()
        .map(|xs| (direction.sigma(xs, v_g) - t).abs())
        .fold(f64::INFINITY, f64::min);
    let exp_bound = (-rates.slowest_decay() * min_s).exp();
    let a = params.omega_s().min(params.omega_q());
    exp_bound < STEADY_EXP_THRESHOLD && 1.0 / (a * min_s) < STEADY_TAIL_THRESHOLD
}

/// Field samples over a grid, x-major. Cells are `None` where a wave is not
/// defined (wrong region, or before the scattered signal has arrived).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldSlice {
    pub xs: Vec<f64>,
    pub ts: Vec<f64>,
    pub u: Vec<Option<ComplexValue>>,
    pub v: Vec<Option<ComplexValue>>,
    pub w: Vec<Option<ComplexValue>>,
    pub energy_u: Vec<Option<f64>>,
    pub energy_v: Vec<Option<f64>>,
    pub energy_w: Vec<Option<f64>>,
    pub branch: Branch,
    pub regime: Regime,
}

impl FieldSlice {
    pub fn index(&self, ix: usize, it: usize) -> usize {
        ix * self.ts.len() + it
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Components {
    forward: bool,
    backward: bool,
}

fn causal(direction: Direction, x: f64, t: f64, params: &ModelParams) -> bool {
    let v_g = params.v_g();
    [x, x - params.distance()]
        .into_iter()
        .all(|xs| direction.sigma(xs, v_g) - t < 0.0)
}

/// Undefined cells map to `None`; causality violations on the transient
/// branch are undefined rather than errors.
fn sample(
    direction: Direction,
    x: f64,
    t: f64,
    region: Region,
    rates: &CollectiveRates,
    params: &ModelParams,
    branch: Branch,
) -> Result<Option<ComplexValue>> {
    let allowed = match direction {
        Direction::Forward => region != Region::Before,
        Direction::Backward => region != Region::Behind,
    };
    if !allowed || (branch == Branch::Transient && !causal(direction, x, t, params)) {
        return Ok(None);
    }
    let value = match direction {
        Direction::Forward => forward_at(x, t, rates, params, branch)?,
        Direction::Backward => backward_at(x, t, rates, params, branch)?,
    };
    Ok(Some(value))
}

fn evaluate(
    grid: &SpaceTimeGrid,
    rates: &CollectiveRates,
    params: &ModelParams,
    branch: Branch,
    which: Components,
) -> Result<FieldSlice> {
    let a2 = params.amplitude_a().powi(2);
    let cells: Vec<(Option<ComplexValue>, Option<ComplexValue>)> = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let (x, t, region) = grid.point(k);
            let u = if which.forward {
                sample(Direction::Forward, x, t, region, rates, params, branch)?
            } else {
                None
            };
            let v = if which.backward {
                sample(Direction::Backward, x, t, region, rates, params, branch)?
            } else {
                None
            };
            Ok((u, v))
        })
        .collect::<Result<_>>()?;
    let (u, v): (Vec<_>, Vec<_>) = cells.into_iter().unzip();
    let w: Vec<Option<ComplexValue>> = u
        .iter()
        .zip(&v)
        .enumerate()
        .map(|(k, (u, v))| match (grid.point(k).2, u, v) {
            (Region::Between, Some(u), Some(v)) if which.forward && which.backward => Some(u + v),
            _ => None,
        })
        .collect();
    let energy = |f: &[Option<ComplexValue>]| -> Vec<Option<f64>> {
        f.iter().map(|c| c.map(|c| c.norm_sqr() / a2)).collect()
    };
    Ok(FieldSlice {
        xs: grid.xs().to_vec(),
        ts: grid.ts().to_vec(),
        energy_u: energy(&u),
        energy_v: energy(&v),
        energy_w: energy(&w),
        u,
        v,
        w,
        branch,
        regime: rates.regime,
    })
}

/// Forward field `u` over a grid.
pub fn forward_field(
    grid: &SpaceTimeGrid,
    rates: &CollectiveRates,
    params: &ModelParams,
    branch: Branch,
) -> Result<FieldSlice> {
    evaluate(grid, rates, params, branch, Components { forward: true, backward: false })
}

/// Backward field `v` over a grid.
pub fn backward_field(
    grid: &SpaceTimeGrid,
    rates: &CollectiveRates,
    params: &ModelParams,
    branch: Branch,
) -> Result<FieldSlice> {
    evaluate(grid, rates, params, branch, Components { forward: false, backward: true })
}

/// `u`, `v` and, between the qubits, `w = u + v` over a grid.
pub fn interqubit_field(
    grid: &SpaceTimeGrid,
    rates: &CollectiveRates,
    params: &ModelParams,
    branch: Branch,
) -> Result<FieldSlice> {
    evaluate(grid, rates, params, branch, Components { forward: true, backward: true })
}
