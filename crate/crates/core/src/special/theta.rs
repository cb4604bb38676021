//! The Riemann–Siegel theta function and its first two derivatives.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{digamma, ln_gamma, trigamma, BERNOULLI_2K};
use crate::error::{Error, Result};

/// Below this height the Γ-based closed form replaces the asymptotic series.
pub const ASYMPTOTIC_CUTOFF: f64 = 10.0;

const TERMS: usize = 7;

/// Coefficients of t^{1−2k} in the asymptotic expansion:
/// (1 − 2^{1−2k}) |B_{2k}| / (4k(2k−1)).
fn coefficients() -> [f64; TERMS] {
    let mut out = [0.0; TERMS];
    for (k0, c) in out.iter_mut().enumerate() {
        let k = (k0 + 1) as f64;
        let b = BERNOULLI_2K[k0].abs();
        *c = (1.0 - 2f64.powf(1.0 - 2.0 * k)) * b / (4.0 * k * (2.0 * k - 1.0));
    }
    out
}

fn check_domain(t: f64) -> Result<()> {
    if !(t >= 1.0) || !t.is_finite() {
        return Err(Error::domain(format!("theta requires t >= 1, got {t}")));
    }
    Ok(())
}

fn gamma_arg(t: f64) -> Complex64 {
    Complex64::new(0.25, 0.5 * t)
}

/// θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π, valid for every real t.
pub fn theta_closed_form(t: f64) -> f64 {
    ln_gamma(gamma_arg(t)).expect("1/4 + it/2 is never a pole").im - 0.5 * t * PI.ln()
}

/// θ(t) for t ≥ 1.
pub fn theta(t: f64) -> Result<f64> {
    check_domain(t)?;
    if t < ASYMPTOTIC_CUTOFF {
        return Ok(theta_closed_form(t));
    }
    let c = coefficients();
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv;
    for ck in c {
        corr += ck * p;
        p *= inv2;
    }
    Ok(0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + corr)
}

/// θ'(t) for t ≥ 1.
pub fn theta_deriv(t: f64) -> Result<f64> {
    check_domain(t)?;
    if t < ASYMPTOTIC_CUTOFF {
        let psi = digamma(gamma_arg(t)).expect("no pole");
        return Ok(0.5 * psi.re - 0.5 * PI.ln());
    }
    let c = coefficients();
    let inv2 = 1.0 / (t * t);
    let mut corr = 0.0;
    let mut p = inv2;
    for (k0, ck) in c.iter().enumerate() {
        corr += (2 * k0 + 1) as f64 * ck * p;
        p *= inv2;
    }
    Ok(0.5 * (t / (2.0 * PI)).ln() - corr)
}

/// θ''(t) for t ≥ 1.
pub fn theta_second_deriv(t: f64) -> Result<f64> {
    check_domain(t)?;
    if t < ASYMPTOTIC_CUTOFF {
        let tri = trigamma(gamma_arg(t)).expect("no pole");
        return Ok(-0.25 * tri.im);
    }
    let c = coefficients();
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv2 * inv;
    for (k0, ck) in c.iter().enumerate() {
        let a = (2 * k0 + 1) as f64;
        corr += a * (a + 1.0) * ck * p;
        p *= inv2;
    }
    Ok(0.5 * inv + corr)
}
