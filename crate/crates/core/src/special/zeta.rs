//! ζ and its derivatives by Euler–Maclaurin summation, differentiated through
//! truncated Taylor jets in the shift ε of s + ε.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::gamma::BERNOULLI_2K;
use super::{ComplexPoint, DerivativeBundle, EvalAccuracy};
use crate::error::{Error, Result};
use crate::summation::ComplexSum;

const LN_TABLE_LEN: usize = 1 << 18;

fn ln_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| (0..LN_TABLE_LEN).map(|m| (m.max(1) as f64).ln()).collect())
}

#[inline]
fn ln_m(m: usize) -> f64 {
    let table = ln_table();
    if m < table.len() {
        table[m]
    } else {
        (m as f64).ln()
    }
}

/// Number of terms summed directly before the Euler–Maclaurin tail.
///
/// The additive margin keeps the correction series convergent well past 1e−13
/// at moderate heights, where 1.3·t/2π alone leaves too little room.
pub fn main_terms(t: f64) -> usize {
    (1.3 * t.abs() / (2.0 * PI)).ceil() as usize + 30
}

/// B_{2k}/(2k)!, exact for k ≤ 10 and through ζ(2k) beyond.
fn bernoulli_over_factorial(k: usize) -> f64 {
    if k <= BERNOULLI_2K.len() {
        let mut f = 1.0;
        for i in 1..=2 * k {
            f *= i as f64;
        }
        return BERNOULLI_2K[k - 1] / f;
    }
    let two_k = 2.0 * k as f64;
    let zeta_2k: f64 = (1..=20).map(|m| (m as f64).powf(-two_k)).sum();
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    sign * (2f64.ln() + zeta_2k.ln() - two_k * (2.0 * PI).ln()).exp()
}

/// Truncated Taylor jet in ε: entry i is the coefficient of ε^i.
type Jet = Vec<Complex64>;

fn jet_mul(a: &[Complex64], b: &[Complex64]) -> Jet {
    let n = a.len();
    (0..n)
        .map(|i| (0..=i).map(|p| a[p] * b[i - p]).sum())
        .collect()
}

/// In-place multiplication by the linear jet (c + ε).
fn jet_mul_linear(a: &mut [Complex64], c: Complex64) {
    for i in (0..a.len()).rev() {
        let lower = if i > 0 { a[i - 1] } else { Complex64::new(0.0, 0.0) };
        a[i] = a[i] * c + lower;
    }
}

/// Jet of e^{−ε·x}.
fn exp_jet(x: f64, len: usize) -> Jet {
    let mut out = Vec::with_capacity(len);
    let mut v = 1.0;
    for i in 0..len {
        out.push(Complex64::new(v, 0.0));
        v *= -x / (i as f64 + 1.0);
    }
    out
}

/// max_i i!·|a_i|: the size of the derivatives represented by a jet.
fn derivative_norm(a: &[Complex64]) -> f64 {
    let mut f = 1.0;
    let mut m: f64 = 0.0;
    for (i, v) in a.iter().enumerate() {
        if i > 0 {
            f *= i as f64;
        }
        let x = f * v.norm();
        if x.is_nan() {
            return f64::NAN;
        }
        m = m.max(x);
    }
    m
}

/// ζ⁽ʲ⁾(s) for j = 0..=n.
pub fn zeta_derivs(s: ComplexPoint, n: usize, acc: EvalAccuracy) -> Result<DerivativeBundle> {
    let s: Complex64 = s.into();
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::domain("non-finite argument"));
    }
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::Pole { re: 1.0, im: 0.0 });
    }
    let len = n + 1;
    let big_n = main_terms(s.im);

    let mut sums: Vec<ComplexSum> = vec![ComplexSum::new(); len];
    for m in 1..big_n {
        let lm = ln_m(m);
        let base = Complex64::from_polar((-s.re * lm).exp(), -s.im * lm);
        sums[0].add(base);
        let mut term = base;
        for (i, acc_i) in sums.iter_mut().enumerate().skip(1) {
            term *= -lm / i as f64;
            acc_i.add(term);
        }
    }

    let ln_n = ln_m(big_n);
    let e_jet = exp_jet(ln_n, len);
    let n_pow_s = Complex64::from_polar((-s.re * ln_n).exp(), -s.im * ln_n);

    // N^{1−s−ε}/(s+ε−1)
    let sm1_inv = (s - 1.0).inv();
    let mut recip = Vec::with_capacity(len);
    let mut r = sm1_inv;
    for _ in 0..len {
        recip.push(r);
        r *= -sm1_inv;
    }
    let integral = jet_mul(&e_jet, &recip);
    let big_n_f = big_n as f64;
    for i in 0..len {
        sums[i].add(integral[i] * n_pow_s * big_n_f);
        sums[i].add(e_jet[i] * n_pow_s * 0.5);
    }

    // Σ_k B_{2k}/(2k)! · (s+ε)_{2k−1} · N^{−s−ε−2k+1}
    // `poch` holds (s+ε)_{2k−1} / N^{2k−1} so that neither factor overflows.
    let inv_n = 1.0 / big_n_f;
    let mut poch: Jet = vec![Complex64::new(0.0, 0.0); len];
    poch[0] = s * inv_n;
    if len > 1 {
        poch[1] = Complex64::new(inv_n, 0.0);
    }
    let mut converged = false;
    for k in 1..=acc.max_terms {
        if k > 1 {
            jet_mul_linear(&mut poch, s + (2 * k - 3) as f64);
            jet_mul_linear(&mut poch, s + (2 * k - 2) as f64);
            for v in poch.iter_mut() {
                *v *= inv_n * inv_n;
            }
        }
        let coef = n_pow_s * bernoulli_over_factorial(k);
        let term: Jet = jet_mul(&poch, &e_jet).into_iter().map(|v| v * coef).collect();
        let size = derivative_norm(&term);
        if !size.is_finite() {
            break;
        }
        for i in 0..len {
            sums[i].add(term[i]);
        }
        if size < acc.abs_tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::AccuracyUnreachable {
            tol: acc.abs_tol,
            max_terms: acc.max_terms,
        });
    }

    let mut fact = 1.0;
    let values = sums
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if i > 0 {
                fact *= i as f64;
            }
            v.value() * fact
        })
        .collect();
    Ok(DerivativeBundle { values })
}

/// ζ(s).
pub fn zeta(s: ComplexPoint, acc: EvalAccuracy) -> Result<Complex64> {
    Ok(zeta_derivs(s, 0, acc)?.values[0])
}
