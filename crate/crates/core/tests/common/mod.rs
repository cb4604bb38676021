//! Oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use zext_core::arith::{ArithmeticTable, Sieve};
use zext_core::special::chi_log_deriv;
use zext_core::ComplexPoint;

/// Fourth-order central difference.
pub fn fd5<T>(f: impl Fn(f64) -> T, h: f64) -> T
where
    T: std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T> + Copy,
{
    let (a, b, c, d) = (f(-2.0 * h), f(-h), f(h), f(2.0 * h));
    (a - d + (c - b) * 8.0) * (1.0 / (12.0 * h))
}

/// Uniform points with 0 < σ < 1 and t in [t_lo, t_hi], from a fixed seed.
pub fn strip_points(count: usize, t_lo: f64, t_hi: f64, seed: u64) -> Vec<ComplexPoint> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| ComplexPoint::new(rng.random_range(0.01..0.99), rng.random_range(t_lo..t_hi)))
        .collect()
}

pub fn ordinates(count: usize, t_lo: f64, t_hi: f64, seed: u64) -> Vec<f64> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| rng.random_range(t_lo..t_hi)).collect()
}

/// Σ_{m≤M} a(m,s) m^{−s} with a(m,s) = −Λ(m) + Σ_k f(s)^{−k} a_k(m), f = −½χ'/χ.
pub struct Z1DirichletOracle {
    lambda: ArithmeticTable,
    a: Vec<ArithmeticTable>,
}

impl Z1DirichletOracle {
    pub fn new(upper: usize, k_max: usize) -> Self {
        let sieve = Sieve::new(upper);
        let lambda = sieve.von_mangoldt().clone();
        let mut a = vec![sieve.a_k(1).unwrap()];
        while a.len() < k_max {
            let next = lambda.convolve(a.last().unwrap());
            a.push(next);
        }
        Self { lambda, a }
    }

    pub fn eval(&self, s: ComplexPoint) -> Complex64 {
        let sc = Complex64::new(s.re, s.im);
        let f = -0.5 * chi_log_deriv(s).unwrap();
        let upper = self.lambda.upper;
        let pow: Vec<Complex64> = (0..=upper)
            .map(|m| if m == 0 { Complex64::new(0.0, 0.0) } else { (-sc * (m as f64).ln()).exp() })
            .collect();
        let series = |t: &ArithmeticTable| -> Complex64 {
            (2..=upper).filter(|&m| t.values[m] != 0.0).map(|m| pow[m] * t.values[m]).sum()
        };
        let mut total = -series(&self.lambda);
        let mut w = Complex64::new(1.0, 0.0);
        for ak in &self.a {
            w /= f;
            let term = w * series(ak);
            total += term;
            if term.norm() < 1e-15 {
                break;
            }
        }
        total
    }
}
