//! Single-excitation evolution with a discretized photon continuum.
//!
//! Forward and backward modes on a uniform frequency grid couple to qubits at
//! `x = 0` and `x = d` with the full retarded phases `e^{±iωd/v_g}`. The
//! equations are integrated in the interaction picture with RK4; nothing is
//! assumed about memory, so this is an independent reference for both the
//! Markov spectra and their retarded corrections.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Result, WqedError};
use crate::model::ModelParams;
use crate::ComplexValue;

/// Largest tolerated `|norm − 1|`.
pub const NORM_DRIFT_LIMIT: f64 = 1e-3;
/// Exact phases are recomputed every this many steps.
const PHASE_RESYNC: usize = 256;

/// Uniform mode grid with trapezoid weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuumGrid {
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
}

impl ContinuumGrid {
    /// `points` modes on `[lo·Ω, hi·Ω]`.
    pub fn around(params: &ModelParams, lo: f64, hi: f64, points: usize) -> Self {
        Self {
            omega_min: lo * params.omega_q(),
            omega_max: hi * params.omega_q(),
            points,
        }
    }

    pub fn spacing(&self) -> f64 {
        (self.omega_max - self.omega_min) / (self.points - 1) as f64
    }

    /// Time after which the discrete spectrum revives, `2π/δω`.
    pub fn recurrence_time(&self) -> f64 {
        2.0 * PI / self.spacing()
    }

    fn nodes(&self) -> (Vec<f64>, Vec<f64>) {
        let h = self.spacing();
        let omegas = (0..self.points).map(|k| self.omega_min + k as f64 * h).collect();
        let mut weights = vec![h; self.points];
        weights[0] *= 0.5;
        weights[self.points - 1] *= 0.5;
        (omegas, weights)
    }
}

/// Frequency dependence of the mode coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub enum Coupling {
    /// `g(ω) = g`, matching the closed-form model.
    #[default]
    Flat,
    /// `g(ω) = g √(ω/Ω)`.
    SqrtOmega,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuumSpec {
    pub grid: ContinuumGrid,
    pub coupling: Coupling,
    /// Arrival time of the packet centre at `x = 0`.
    pub t0: f64,
    pub t_end: f64,
    pub dt: f64,
    /// Record every this many steps.
    pub record_every: usize,
}

impl ContinuumSpec {
    /// Step `0.05/max|ω − Ω|` capped at `0.01/Γ`.
    pub fn default_step(grid: &ContinuumGrid, params: &ModelParams) -> f64 {
        let reach = (grid.omega_max - params.omega_q())
            .abs()
            .max((grid.omega_min - params.omega_q()).abs());
        (0.05 / reach).min(0.01 / params.gamma())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuumRun {
    pub times: Vec<f64>,
    pub norm: Vec<f64>,
    /// `|β₁|² + |β₂|²`.
    pub population: Vec<f64>,
    /// `Σ w|γ|²`: forward photon probability.
    pub forward: Vec<f64>,
    /// `Σ w|δ|²`: backward photon probability.
    pub backward: Vec<f64>,
    pub max_drift: f64,
    /// Initial packet weights `w|γ₀(ω)|²` on the grid, summing to one.
    pub packet: Vec<(f64, f64)>,
}

impl ContinuumRun {
    /// `Σ w|γ₀(ω)|² f(ω)`: a spectrum averaged over the incident packet.
    pub fn packet_average<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.packet.iter().map(|&(om, p)| p * f(om)).sum()
    }

    pub fn final_forward(&self) -> f64 {
        *self.forward.last().expect("run records at least one sample")
    }

    pub fn final_backward(&self) -> f64 {
        *self.backward.last().expect("run records at least one sample")
    }
}

struct State {
    beta: [ComplexValue; 2],
    fwd: Vec<ComplexValue>,
    bwd: Vec<ComplexValue>,
}

struct Modes {
    /// `w_j g_j`.
    wg: Vec<f64>,
    g: Vec<f64>,
    /// `e^{i k_j d}`.
    kd: Vec<ComplexValue>,
}

impl Modes {
    /// Writes `d/dt` of `y` into `dy`, given phases `p_j = e^{i(ω_j − Ω)t}`.
    #[allow(clippy::needless_range_loop)]
    fn rhs(&self, p: &[ComplexValue], y: &State, dy: &mut State) {
        let i = ComplexValue::i();
        let mut s1 = ComplexValue::new(0.0, 0.0);
        let mut s2 = ComplexValue::new(0.0, 0.0);
        for j in 0..self.wg.len() {
            let pc = p[j].conj();
            let (a, b) = (y.fwd[j], y.bwd[j]);
            s1 += self.wg[j] * (a + b) * pc;
            s2 += self.wg[j] * (self.kd[j] * a + self.kd[j].conj() * b) * pc;
            let drive = -i * self.g[j] * p[j];
            dy.fwd[j] = drive * (y.beta[0] + self.kd[j].conj() * y.beta[1]);
            dy.bwd[j] = drive * (y.beta[0] + self.kd[j] * y.beta[1]);
        }
        dy.beta = [-i * s1, -i * s2];
    }
}

fn axpy(out: &mut State, y: &State, k: &State, s: f64) {
    out.beta = [y.beta[0] + s * k.beta[0], y.beta[1] + s * k.beta[1]];
    for j in 0..y.fwd.len() {
        out.fwd[j] = y.fwd[j] + s * k.fwd[j];
        out.bwd[j] = y.bwd[j] + s * k.bwd[j];
    }
}

fn probabilities(y: &State, weights: &[f64]) -> (f64, f64, f64) {
    let pop = y.beta[0].norm_sqr() + y.beta[1].norm_sqr();
    let f: f64 = y.fwd.iter().zip(weights).map(|(a, w)| w * a.norm_sqr()).sum();
    let b: f64 = y.bwd.iter().zip(weights).map(|(a, w)| w * a.norm_sqr()).sum();
    (pop, f, b)
}

/// Sends a Gaussian packet centred at `ω_S` with spectral width `Δ` at the
/// qubits and integrates to `spec.t_end`.
pub fn continuum_evolve(params: &ModelParams, spec: &ContinuumSpec) -> Result<ContinuumRun> {
    let grid = &spec.grid;
    if grid.points < 16 || !(grid.omega_min > 0.0 && grid.omega_max > grid.omega_min) {
        return Err(WqedError::InvalidParams(format!("bad continuum grid {grid:?}")));
    }
    if !(spec.dt > 0.0 && spec.t_end > 0.0 && spec.t0 >= 0.0) {
        return Err(WqedError::InvalidParams("continuum times must be positive".into()));
    }
    let (lo, hi) = (
        (0.5 * params.omega_q()).min(params.omega_s() - 8.0 * params.delta_bw()),
        (1.5 * params.omega_q()).max(params.omega_s() + 8.0 * params.delta_bw()),
    );
    if grid.omega_min > lo || grid.omega_max < hi {
        return Err(WqedError::InvalidParams(format!(
            "continuum grid [{:e}, {:e}] must cover [{lo:e}, {hi:e}]",
            grid.omega_min, grid.omega_max
        )));
    }
    if spec.t_end >= grid.recurrence_time() {
        return Err(WqedError::InvalidParams(format!(
            "t_end = {:e} reaches the grid recurrence time {:e}",
            spec.t_end,
            grid.recurrence_time()
        )));
    }
    let omega_q = params.omega_q();
    let (omegas, weights) = grid.nodes();
    let g0 = params.coupling_g();
    let g: Vec<f64> = omegas
        .iter()
        .map(|&w| match spec.coupling {
            Coupling::Flat => g0,
            Coupling::SqrtOmega => g0 * (w / omega_q).sqrt(),
        })
        .collect();
    let modes = Modes {
        wg: weights.iter().zip(&g).map(|(w, g)| w * g).collect(),
        g,
        kd: omegas
            .iter()
            .map(|&w| ComplexValue::cis(params.k_of(w) * params.distance()))
            .collect(),
    };

    let bw = params.delta_bw();
    let ws = params.omega_s();
    let mut fwd: Vec<ComplexValue> = omegas
        .iter()
        .map(|&w| {
            let nu = w - ws;
            (-(nu * nu) / (4.0 * bw * bw)).exp() * ComplexValue::cis(nu * spec.t0)
        })
        .collect();
    let norm0: f64 = fwd.iter().zip(&weights).map(|(a, w)| w * a.norm_sqr()).sum();
    let scale = norm0.sqrt().recip();
    fwd.iter_mut().for_each(|a| *a *= scale);
    let packet = omegas
        .iter()
        .zip(&weights)
        .zip(&fwd)
        .map(|((&om, &w), a)| (om, w * a.norm_sqr()))
        .collect();

    let n = grid.points;
    let zero = ComplexValue::new(0.0, 0.0);
    let blank = || State {
        beta: [zero, zero],
        fwd: vec![zero; n],
        bwd: vec![zero; n],
    };
    let mut y = State {
        beta: [zero, zero],
        fwd,
        bwd: vec![zero; n],
    };
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (blank(), blank(), blank(), blank(), blank());

    let steps = (spec.t_end / spec.dt).ceil() as usize;
    let h = spec.t_end / steps as f64;
    let detunings: Vec<f64> = omegas.iter().map(|w| w - omega_q).collect();
    let half_step: Vec<ComplexValue> = detunings.iter().map(|d| ComplexValue::cis(0.5 * d * h)).collect();
    let mut p0: Vec<ComplexValue> = vec![ComplexValue::new(1.0, 0.0); n];
    let mut pm = vec![zero; n];
    let mut p1 = vec![zero; n];

    let record_every = spec.record_every.max(1);
    let mut run = ContinuumRun {
        times: Vec::new(),
        norm: Vec::new(),
        population: Vec::new(),
        forward: Vec::new(),
        backward: Vec::new(),
        max_drift: 0.0,
        packet,
    };
    let record = |t: f64, y: &State, run: &mut ContinuumRun| -> Result<()> {
        let (pop, f, b) = probabilities(y, &weights);
        let norm = pop + f + b;
        let drift = (norm - 1.0).abs();
        run.max_drift = run.max_drift.max(drift);
        run.times.push(t);
        run.norm.push(norm);
        run.population.push(pop);
        run.forward.push(f);
        run.backward.push(b);
        if drift > NORM_DRIFT_LIMIT {
            return Err(WqedError::NormDrift {
                t,
                drift,
                limit: NORM_DRIFT_LIMIT,
            });
        }
        Ok(())
    };
    record(0.0, &y, &mut run)?;

    for step in 0..steps {
        let t = step as f64 * h;
        if step % PHASE_RESYNC == 0 {
            for (p, d) in p0.iter_mut().zip(&detunings) {
                *p = ComplexValue::cis(d * t);
            }
        }
        for j in 0..n {
            pm[j] = p0[j] * half_step[j];
            p1[j] = pm[j] * half_step[j];
        }
        modes.rhs(&p0, &y, &mut k1);
        axpy(&mut tmp, &y, &k1, 0.5 * h);
        modes.rhs(&pm, &tmp, &mut k2);
        axpy(&mut tmp, &y, &k2, 0.5 * h);
        modes.rhs(&pm, &tmp, &mut k3);
        axpy(&mut tmp, &y, &k3, h);
        modes.rhs(&p1, &tmp, &mut k4);
        let c = h / 6.0;
        for q in 0..2 {
            y.beta[q] += c * (k1.beta[q] + 2.0 * k2.beta[q] + 2.0 * k3.beta[q] + k4.beta[q]);
        }
        for j in 0..n {
            y.fwd[j] += c * (k1.fwd[j] + 2.0 * k2.fwd[j] + 2.0 * k3.fwd[j] + k4.fwd[j]);
            y.bwd[j] += c * (k1.bwd[j] + 2.0 * k2.bwd[j] + 2.0 * k3.bwd[j] + k4.bwd[j]);
        }
        std::mem::swap(&mut p0, &mut p1);
        if (step + 1) % record_every == 0 || step + 1 == steps {
            record((step + 1) as f64 * h, &y, &mut run)?;
        }
    }
    Ok(run)
}
