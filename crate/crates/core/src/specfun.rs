//! Sine, cosine and exponential integrals.
//!
//! Conventions:
//!
//! * `Si(x) = ∫₀ˣ sin t / t dt` (entire, odd)
//! * `si(x) = Si(x) − π/2 = −∫ₓ^∞ sin t / t dt`
//! * `ci(x) = −∫ₓ^∞ cos t / t dt`, only for `x > 0`
//! * `E1(z) = ∫_z^∞ e^{−t} / t dt`, principal branch, cut on the negative real axis
//!
//! Note on `si`: the textbook relation `si = Si − (π/2)·sign` is used for the
//! lower-case sine integral. `si(x) + si(−x) = −π` for every `x`.
//!
//! `Si`/`ci` use their power series for `|x| ≤ 4` and the continued fraction of
//! `E1(ix)` above. `E1` uses its power series for `|z| ≤ 2` (and deep in the left
//! half-plane) and a modified-Lentz continued fraction elsewhere.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Switch point between power series and continued fraction for `Si` and `ci`.
pub const SI_CI_SWITCH: f64 = 4.0;

/// Radius below which `E1` is summed from its power series.
pub const E1_SERIES_RADIUS: f64 = 2.0;

const SERIES_EPS: f64 = 1e-17;
const CF_EPS: f64 = 1e-16;
const CF_MAX_ITER: usize = 20_000;
const TINY: f64 = 1e-300;

/// `Si(x)`, the sine integral.
pub fn sine_integral(x: f64) -> f64 {
    let ax = x.abs();
    let value = if ax <= SI_CI_SWITCH {
        si_series(ax)
    } else {
        e1_imag_axis(ax).im + FRAC_PI_2
    };
    value.copysign(x)
}

/// `si(x) = Si(x) − π/2`.
pub fn si_lower(x: f64) -> f64 {
    if x > SI_CI_SWITCH {
        // Direct from the continued fraction, avoiding cancellation against π/2.
        e1_imag_axis(x).im
    } else {
        sine_integral(x) - FRAC_PI_2
    }
}

/// `ci(x)` for `x > 0`. Diverges logarithmically at the origin.
pub fn cosine_integral(x: f64) -> Result<f64> {
    check_ci_domain(x)?;
    Ok(if x <= SI_CI_SWITCH {
        ci_series(x)
    } else {
        -e1_imag_axis(x).re
    })
}

/// `(ci(x), si(x))` for `x > 0`, sharing one continued-fraction evaluation.
pub fn ci_si(x: f64) -> Result<(f64, f64)> {
    check_ci_domain(x)?;
    if x <= SI_CI_SWITCH {
        Ok((ci_series(x), si_series(x) - FRAC_PI_2))
    } else {
        let e = e1_imag_axis(x);
        Ok((-e.re, e.im))
    }
}

fn check_ci_domain(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(
            "ci",
            format!("argument must be finite and strictly positive, got {x}"),
        ));
    }
    Ok(())
}

/// Principal-branch `E1(z)`.
pub fn exp_integral_e1(z: Complex64) -> Result<Complex64> {
    check_e1_domain(z)?;
    if use_e1_series(z) {
        Ok(e1_series(z))
    } else {
        Ok((-z).exp() * e1_continued_fraction(z))
    }
}

/// `e^z · E1(z)`, finite for large `|z|` in either half-plane.
pub fn exp_integral_e1_scaled(z: Complex64) -> Result<Complex64> {
    check_e1_domain(z)?;
    if use_e1_series(z) {
        Ok(z.exp() * e1_series(z))
    } else {
        Ok(e1_continued_fraction(z))
    }
}

fn check_e1_domain(z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(domain("E1", format!("non-finite argument {z}")));
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Err(domain("E1", "logarithmic singularity at z = 0"));
    }
    if z.im == 0.0 && z.re < 0.0 {
        return Err(domain("E1", format!("argument {z} lies on the branch cut")));
    }
    Ok(())
}

fn use_e1_series(z: Complex64) -> bool {
    let r = z.norm();
    r <= E1_SERIES_RADIUS || (z.re < -2.0 * z.im.abs() && r < 40.0)
}

fn si_series(x: f64) -> f64 {
    // Σ (−1)^k x^{2k+1} / ((2k+1)(2k+1)!)
    let x2 = x * x;
    let mut power = x;
    let mut sum = x;
    let mut k = 0usize;
    loop {
        let n = 2 * k as u64;
        power *= -x2 / (((n + 2) * (n + 3)) as f64);
        let term = power / (n + 3) as f64;
        sum += term;
        k += 1;
        if term.abs() <= SERIES_EPS * sum.abs() || k > 200 {
            break;
        }
    }
    sum
}

fn ci_series(x: f64) -> f64 {
    // γ + ln x + Σ_{k≥1} (−1)^k x^{2k} / (2k (2k)!)
    let x2 = x * x;
    let mut power = 1.0;
    let mut sum = 0.0;
    let mut k = 1usize;
    loop {
        let n = 2 * k as u64;
        power *= -x2 / (((n - 1) * n) as f64);
        let term = power / n as f64;
        sum += term;
        if term.abs() <= SERIES_EPS * (sum.abs() + 1.0) || k > 200 {
            break;
        }
        k += 1;
    }
    EULER_GAMMA + x.ln() + sum
}

fn e1_series(z: Complex64) -> Complex64 {
    // −γ − ln z + Σ_{k≥1} (−1)^{k+1} z^k / (k·k!)
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..500 {
        power *= -z / k as f64;
        let term = power / k as f64;
        sum -= term;
        if term.norm() <= SERIES_EPS * sum.norm().max(1.0) {
            break;
        }
    }
    -EULER_GAMMA - z.ln() + sum
}

/// Continued fraction for `e^z E1(z)`:
/// `1/(z+1 − 1²/(z+3 − 2²/(z+5 − …)))`, evaluated by modified Lentz.
fn e1_continued_fraction(z: Complex64) -> Complex64 {
    let tiny = Complex64::new(TINY, 0.0);
    let mut f = z + 1.0;
    if f.norm() < TINY {
        f = tiny;
    }
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for k in 1..CF_MAX_ITER {
        let a = -((k * k) as f64);
        let b = z + (2 * k + 1) as f64;
        d = b + a * d;
        if d.norm() < TINY {
            d = tiny;
        }
        c = b + a / c;
        if c.norm() < TINY {
            c = tiny;
        }
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < CF_EPS {
            break;
        }
    }
    f.inv()
}

/// `E1(ix)` for `x > 0` via the continued fraction.
fn e1_imag_axis(x: f64) -> Complex64 {
    let z = Complex64::new(0.0, x);
    Complex64::cis(-x) * e1_continued_fraction(z)
}

/// Asymptotic forms `si(x) ≈ −cos x/x − sin x/x²`, `ci(x) ≈ sin x/x − cos x/x²`.
pub fn si_ci_asymptotic(x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    let x2 = x * x;
    (-c / x - s / x2, s / x - c / x2)
}

/// Two-term asymptotic form `E1(z) ≈ e^{−z}/z · (1 − 1/z)`.
pub fn e1_asymptotic(z: Complex64) -> Complex64 {
    (-z).exp() / z * (1.0 - z.inv())
}

#[allow(dead_code)]
pub(crate) const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);
