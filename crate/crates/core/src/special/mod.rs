//! Special functions on and near the critical line.

mod gamma;
mod theta;
mod zeta;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gamma::{digamma, gamma_real, ln_gamma, trigamma};
pub use theta::{theta, theta_closed_form, theta_deriv, theta_second_deriv, ASYMPTOTIC_CUTOFF};
pub use zeta::{main_terms, zeta, zeta_derivs};

/// Guard on |Z₁| below which its logarithmic derivative is refused.
pub const NEAR_ZERO_GUARD: f64 = 1e-12;

/// s = σ + it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    /// 1/2 + it.
    pub const fn critical(t: f64) -> Self {
        Self { re: 0.5, im: t }
    }

    /// 1 − s.
    pub fn reflect(self) -> Self {
        Self {
            re: 1.0 - self.re,
            im: -self.im,
        }
    }
}

impl From<Complex64> for ComplexPoint {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexPoint> for Complex64 {
    fn from(p: ComplexPoint) -> Self {
        Complex64::new(p.re, p.im)
    }
}

/// Accuracy target for Euler–Maclaurin evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalAccuracy {
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl EvalAccuracy {
    pub fn new(abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(abs_tol > 0.0) {
            return Err(Error::Config(format!("abs_tol must be positive, got {abs_tol}")));
        }
        if max_terms < 8 {
            return Err(Error::Config(format!("max_terms must be at least 8, got {max_terms}")));
        }
        Ok(Self { abs_tol, max_terms })
    }
}

impl Default for EvalAccuracy {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_terms: 100,
        }
    }
}

/// ζ⁽ʲ⁾(s) for j = 0..=n.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeBundle {
    pub values: Vec<Complex64>,
}

impl DerivativeBundle {
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }
}

fn relabel_pole(s: Complex64) -> impl FnOnce(Error) -> Error {
    move |e| match e {
        Error::Pole { .. } => Error::Pole { re: s.re, im: s.im },
        other => other,
    }
}

/// log χ(s) = (s − ½) log π + log Γ((1−s)/2) − log Γ(s/2).
fn ln_chi(s: Complex64) -> Result<Complex64> {
    let a = ln_gamma((1.0 - s) * 0.5).map_err(relabel_pole(s))?;
    let b = ln_gamma(s * 0.5).map_err(relabel_pole(s))?;
    Ok((s - 0.5) * PI.ln() + a - b)
}

/// χ(s), the factor in ζ(s) = χ(s) ζ(1−s).
pub fn chi(s: ComplexPoint) -> Result<Complex64> {
    Ok(ln_chi(s.into())?.exp())
}

fn check_strip(s: Complex64, what: &str) -> Result<()> {
    if (s.re - 0.5).abs() > 2.5 || s.im.abs() <= 1.0 || !s.im.is_finite() {
        return Err(Error::domain(format!(
            "{what} requires -2 <= Re s <= 3 and |Im s| > 1, got {s}"
        )));
    }
    Ok(())
}

/// χ'/χ(s) = log π − ½ψ((1−s)/2) − ½ψ(s/2).
pub fn chi_log_deriv(s: ComplexPoint) -> Result<Complex64> {
    let s: Complex64 = s.into();
    check_strip(s, "chi_log_deriv")?;
    Ok(PI.ln() - 0.5 * digamma((1.0 - s) * 0.5)? - 0.5 * digamma(s * 0.5)?)
}

/// (χ'/χ)'(s) = ¼ψ'((1−s)/2) − ¼ψ'(s/2).
pub fn chi_log_deriv_prime(s: ComplexPoint) -> Result<Complex64> {
    let s: Complex64 = s.into();
    check_strip(s, "chi_log_deriv_prime")?;
    Ok(0.25 * trigamma((1.0 - s) * 0.5)? - 0.25 * trigamma(s * 0.5)?)
}

/// Z(t) = e^{iθ(t)} ζ(1/2 + it).
pub fn hardy_z(t: f64, acc: EvalAccuracy) -> Result<f64> {
    let th = theta(t)?;
    let z = zeta(ComplexPoint::critical(t), acc)?;
    Ok((Complex64::from_polar(1.0, th) * z).re)
}

/// Z(t) together with the imaginary part that must vanish.
pub fn hardy_z_with_residue(t: f64, acc: EvalAccuracy) -> Result<(f64, f64)> {
    let th = theta(t)?;
    let z = zeta(ComplexPoint::critical(t), acc)?;
    let v = Complex64::from_polar(1.0, th) * z;
    Ok((v.re, v.im))
}

/// Z'(t) = Re(i e^{iθ}(θ'ζ + ζ')) at 1/2 + it.
pub fn hardy_z_deriv(t: f64, acc: EvalAccuracy) -> Result<f64> {
    let th = theta(t)?;
    let th1 = theta_deriv(t)?;
    let b = zeta_derivs(ComplexPoint::critical(t), 1, acc)?;
    let inner = b.values[0] * th1 + b.values[1];
    Ok((Complex64::i() * Complex64::from_polar(1.0, th) * inner).re)
}

/// (Z(t), Z'(t), Z''(t)) from a single ζ evaluation.
pub fn hardy_z_jet(t: f64, acc: EvalAccuracy) -> Result<[f64; 3]> {
    let th = theta(t)?;
    let th1 = theta_deriv(t)?;
    let th2 = theta_second_deriv(t)?;
    let b = zeta_derivs(ComplexPoint::critical(t), 2, acc)?;
    let (z0, z1, z2) = (b.values[0], b.values[1], b.values[2]);
    let rot = Complex64::from_polar(1.0, th);
    let i = Complex64::i();
    let d0 = rot * z0;
    let d1 = i * rot * (z0 * th1 + z1);
    let d2 = rot * (-(th1 * th1) * z0 - 2.0 * th1 * z1 - z2 + i * th2 * z0);
    Ok([d0.re, d1.re, d2.re])
}

/// Z₁(s) = ζ'(s) − ½ (χ'/χ)(s) ζ(s).
pub fn z1(s: ComplexPoint, acc: EvalAccuracy) -> Result<Complex64> {
    let f = -0.5 * chi_log_deriv(s)?;
    let b = zeta_derivs(s, 1, acc)?;
    Ok(b.values[1] + f * b.values[0])
}

/// Z₁'/Z₁(s) = (ζ'' + fζ' + f'ζ)/(ζ' + fζ) with f = −½ χ'/χ.
pub fn z1_log_deriv(s: ComplexPoint, acc: EvalAccuracy) -> Result<Complex64> {
    let f = -0.5 * chi_log_deriv(s)?;
    let fp = -0.5 * chi_log_deriv_prime(s)?;
    let b = zeta_derivs(s, 2, acc)?;
    let (z0, z1v, z2) = (b.values[0], b.values[1], b.values[2]);
    let den = z1v + f * z0;
    if den.norm() < NEAR_ZERO_GUARD {
        return Err(Error::NearZeroDenominator {
            magnitude: den.norm(),
        });
    }
    Ok((z2 + f * z1v + fp * z0) / den)
}
