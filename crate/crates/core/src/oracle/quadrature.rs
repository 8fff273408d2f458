//! Gauss–Legendre panels and adaptive Gauss–Kronrod for complex integrands.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Result, WqedError};
use crate::ComplexValue;

/// Nodes per Gauss–Legendre panel.
pub const GL_ORDER: usize = 8;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl8() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GL_ORDER))
}

/// Composite 8-point Gauss–Legendre over `panels` equal panels of `[a, b]`.
pub fn composite_gl<F>(f: F, a: f64, b: f64, panels: usize) -> ComplexValue
where
    F: Fn(f64) -> ComplexValue,
{
    let (nodes, weights) = gl8();
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut sum = ComplexValue::new(0.0, 0.0);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let mut part = ComplexValue::new(0.0, 0.0);
        for (x, w) in nodes.iter().zip(weights) {
            part += *w * f(mid + 0.5 * h * x);
        }
        sum += 0.5 * h * part;
    }
    sum
}

const GK15_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK15_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const G7_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F>(f: &F, a: f64, b: f64) -> (ComplexValue, f64)
where
    F: Fn(f64) -> ComplexValue,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = GK15_WEIGHTS[7] * fc;
    let mut gauss = G7_WEIGHTS[3] * fc;
    for j in 0..7 {
        let dx = h * GK15_NODES[j];
        let pair = f(c - dx) + f(c + dx);
        kronrod += GK15_WEIGHTS[j] * pair;
        if j % 2 == 1 {
            gauss += G7_WEIGHTS[j / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).norm())
}

/// Adaptive Gauss–Kronrod (7/15) quadrature on a finite interval.
pub fn adaptive_gk15<F>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<(ComplexValue, f64)>
where
    F: Fn(f64) -> ComplexValue,
{
    const MAX_INTERVALS: usize = 200_000;
    let (v, e) = gk15(&f, a, b);
    let mut intervals = vec![(a, b, v, e)];
    let mut total = v;
    let mut error = e;
    while error > abs_tol.max(rel_tol * total.norm()) {
        if intervals.len() >= MAX_INTERVALS {
            return Err(WqedError::Truncation {
                estimate: error,
                tolerance: abs_tol.max(rel_tol * total.norm()),
            });
        }
        let (k, _) = intervals
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (k, iv)| if iv.3 > best.1 { (k, iv.3) } else { best });
        let (lo, hi, v, e) = intervals.swap_remove(k);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        total += v1 + v2 - v;
        error += e1 + e2 - e;
        intervals.push((lo, mid, v1, e1));
        intervals.push((mid, hi, v2, e2));
        if mid <= lo || hi <= mid {
            break;
        }
    }
    // Resum to shed drift from the incremental updates.
    let total = intervals.iter().map(|iv| iv.2).sum();
    let error = intervals.iter().map(|iv| iv.3).sum();
    Ok((total, error))
}

/// Adaptive quadrature on `[a, ∞)` via `x = a + s/(1 − s)`.
pub fn adaptive_gk15_semi_infinite<F>(f: F, a: f64, abs_tol: f64, rel_tol: f64) -> Result<(ComplexValue, f64)>
where
    F: Fn(f64) -> ComplexValue,
{
    adaptive_gk15(
        |s| {
            if s >= 1.0 {
                return ComplexValue::new(0.0, 0.0);
            }
            let one_minus = 1.0 - s;
            f(a + s / one_minus) / (one_minus * one_minus)
        },
        0.0,
        1.0,
        abs_tol,
        rel_tol,
    )
}
