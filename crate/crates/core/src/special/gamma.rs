//! Complex log-gamma, digamma and trigamma via recurrence plus Stirling series.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// B_{2k} for k = 1..10.
pub(crate) const BERNOULLI_2K: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const SHIFT_TARGET: f64 = 10.0;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_7;

fn check_pole(z: Complex64) -> Result<()> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    Ok(())
}

fn shift_count(z: Complex64) -> usize {
    if z.re >= SHIFT_TARGET {
        0
    } else {
        (SHIFT_TARGET - z.re).ceil() as usize
    }
}

/// Principal branch of log Γ(z), continuous off the non-positive real axis.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    check_pole(z)?;
    let n = shift_count(z);
    let mut shift = Complex64::new(0.0, 0.0);
    for k in 0..n {
        shift += (z + k as f64).ln();
    }
    let w = z + n as f64;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for (k, b) in BERNOULLI_2K.iter().enumerate() {
        let m = 2.0 * (k as f64 + 1.0);
        series += p * (b / (m * (m - 1.0)));
        p *= inv2;
    }
    Ok((w - 0.5) * w.ln() - w + HALF_LN_2PI + series - shift)
}

/// ψ(z) = Γ'(z)/Γ(z).
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_pole(z)?;
    let n = shift_count(z);
    let mut shift = Complex64::new(0.0, 0.0);
    for k in 0..n {
        shift += (z + k as f64).inv();
    }
    let w = z + n as f64;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv2;
    for (k, b) in BERNOULLI_2K.iter().enumerate() {
        let m = 2.0 * (k as f64 + 1.0);
        series += p * (b / m);
        p *= inv2;
    }
    Ok(w.ln() - 0.5 * inv - series - shift)
}

/// ψ'(z).
pub fn trigamma(z: Complex64) -> Result<Complex64> {
    check_pole(z)?;
    let n = shift_count(z);
    let mut shift = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let u = (z + k as f64).inv();
        shift += u * u;
    }
    let w = z + n as f64;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv2 * inv;
    for b in BERNOULLI_2K.iter() {
        series += p * *b;
        p *= inv2;
    }
    Ok(inv + 0.5 * inv2 + series + shift)
}

/// Real Γ on the positive axis, for tests and small helpers.
pub fn gamma_real(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    ln_gamma(Complex64::new(x, 0.0)).map(|v| v.re.exp()).unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn factorials() {
        let mut f = 1.0_f64;
        for n in 1..20 {
            let lg = ln_gamma(c(n as f64, 0.0)).unwrap();
            assert!((lg.re - f.ln()).abs() < 1e-13 * f.ln().abs().max(1.0), "n={n}");
            assert_eq!(lg.im, 0.0);
            f *= n as f64;
        }
    }

    #[test]
    fn half_integer() {
        let lg = ln_gamma(c(0.5, 0.0)).unwrap();
        assert!((lg.re - 0.5 * PI.ln()).abs() < 1e-14);
    }

    #[test]
    fn reflection_formula() {
        // Γ(z)Γ(1−z) = π / sin(πz)
        for &(x, y) in &[(0.3, 2.0), (-1.7, 0.4), (0.25, 17.0), (2.5, -3.0)] {
            let z = c(x, y);
            let lhs = (ln_gamma(z).unwrap() + ln_gamma(1.0 - z).unwrap()).exp();
            let rhs = PI / (PI * z).sin();
            assert!((lhs - rhs).norm() < 1e-11 * rhs.norm(), "{z}");
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let z = c(0.25, 40.0);
        let a = ln_gamma(z).unwrap();
        let b = ln_gamma(z.conj()).unwrap();
        assert!((a - b.conj()).norm() < 1e-12);
    }

    #[test]
    fn digamma_at_one_is_minus_euler() {
        let v = digamma(c(1.0, 0.0)).unwrap();
        assert!((v.re + 0.577_215_664_901_532_9).abs() < 1e-14);
    }

    #[test]
    fn trigamma_at_one_is_zeta_two() {
        let v = trigamma(c(1.0, 0.0)).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-13);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-5;
        for &(x, y) in &[(0.25, 5.0), (-0.6, 30.0), (1.5, 0.2)] {
            let z = c(x, y);
            let d = (ln_gamma(z + h).unwrap() - ln_gamma(z - h).unwrap()) / (2.0 * h);
            assert!((d - digamma(z).unwrap()).norm() < 1e-8);
            let d2 = (digamma(z + h).unwrap() - digamma(z - h).unwrap()) / (2.0 * h);
            assert!((d2 - trigamma(z).unwrap()).norm() < 1e-8);
        }
    }

    #[test]
    fn poles_are_errors() {
        assert!(ln_gamma(c(0.0, 0.0)).is_err());
        assert!(digamma(c(-3.0, 0.0)).is_err());
        assert!(trigamma(c(-2.0, 0.0)).is_err());
        assert!(ln_gamma(c(-3.0, 1e-9)).is_ok());
    }
}
