//! Exact arithmetic functions and brute-force partial sums used as oracles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::summation::NeumaierSum;

/// Upper limit for convolution tables and double sums.
pub const CONVOLUTION_LIMIT: f64 = 1e7;
/// Upper limit for Σ log m.
pub const LOG_SUM_LIMIT: f64 = 1e8;

/// Values of an arithmetic function on 1..=upper; index 0 is unused and zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithmeticTable {
    pub upper: usize,
    pub values: Vec<f64>,
}

impl ArithmeticTable {
    fn zeros(upper: usize) -> Self {
        Self {
            upper,
            values: vec![0.0; upper + 1],
        }
    }

    pub fn get(&self, m: usize) -> f64 {
        self.values[m]
    }

    /// Dirichlet convolution with a sparse left factor given as (d, f(d)) pairs.
    fn convolve_sparse(left: &[(usize, f64)], right: &ArithmeticTable) -> ArithmeticTable {
        let upper = right.upper;
        let mut acc = vec![NeumaierSum::new(); upper + 1];
        for &(d, fd) in left {
            for e in 1..=upper / d {
                let v = right.values[e];
                if v != 0.0 {
                    acc[d * e].add(fd * v);
                }
            }
        }
        ArithmeticTable {
            upper,
            values: acc.iter().map(NeumaierSum::value).collect(),
        }
    }

    /// The table h with h ∗ divisor = self, by forward substitution.
    pub fn dirichlet_divide(&self, divisor: &ArithmeticTable) -> Result<ArithmeticTable> {
        let upper = self.upper.min(divisor.upper);
        let g1 = divisor.values.get(1).copied().unwrap_or(0.0);
        if g1 == 0.0 {
            return Err(Error::domain("Dirichlet division needs divisor(1) != 0"));
        }
        let mut rest: Vec<NeumaierSum> = self.values[..=upper]
            .iter()
            .map(|&v| std::iter::once(v).collect())
            .collect();
        let mut h = Self::zeros(upper);
        for n in 1..=upper {
            let hn = rest[n].value() / g1;
            h.values[n] = hn;
            if hn == 0.0 {
                continue;
            }
            for m in 2..=upper / n {
                let g = divisor.values[m];
                if g != 0.0 {
                    rest[n * m].add(-hn * g);
                }
            }
        }
        Ok(h)
    }

    /// Dirichlet convolution f ∗ g by the divisor double loop.
    pub fn convolve(&self, other: &ArithmeticTable) -> ArithmeticTable {
        let upper = self.upper.min(other.upper);
        let left: Vec<(usize, f64)> = (1..=upper)
            .filter(|&d| self.values[d] != 0.0)
            .map(|d| (d, self.values[d]))
            .collect();
        let right = ArithmeticTable {
            upper,
            values: other.values[..=upper].to_vec(),
        };
        Self::convolve_sparse(&left, &right)
    }
}

/// What a brute-force sum computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumDefinition {
    /// Σ_{m₁m₂≤x} (−1)ʲ (log m₁)ʲ a_k(m₂).
    AKj,
    /// Σ_{mn≤x} a_k(n).
    AK2,
    /// Σ_{n≤x} a_k(n).
    AK3,
    /// Σ_{m₁m₂≤x} Λ(m₁)(log m₁)ⁿ.
    PsiN,
    /// Σ_{m≤x} log m.
    LogSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SumRecord {
    pub x: f64,
    pub value: f64,
    pub definition: SumDefinition,
}

/// Smallest-prime-factor sieve with the von Mangoldt table it implies.
#[derive(Debug, Clone)]
pub struct Sieve {
    upper: usize,
    spf: Vec<u32>,
    lambda: ArithmeticTable,
}

impl Sieve {
    pub fn new(upper: usize) -> Self {
        let upper = upper.max(1);
        let mut spf = vec![0u32; upper + 1];
        for i in 2..=upper {
            if spf[i] == 0 {
                let mut j = i;
                while j <= upper {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        let mut lambda = ArithmeticTable::zeros(upper);
        for n in 2..=upper {
            let p = spf[n] as usize;
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            if m == 1 {
                lambda.values[n] = (p as f64).ln();
            }
        }
        Self { upper, spf, lambda }
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn smallest_prime_factor(&self, n: usize) -> usize {
        self.spf[n] as usize
    }

    pub fn von_mangoldt(&self) -> &ArithmeticTable {
        &self.lambda
    }

    fn prime_powers(&self) -> Vec<(usize, f64)> {
        (2..=self.upper)
            .filter(|&d| self.lambda.values[d] != 0.0)
            .map(|d| (d, self.lambda.values[d]))
            .collect()
    }

    /// Λ_k: Λ₀ is the convolution unit and Λ_k = Λ_{k−1} ∗ Λ.
    pub fn lambda_k(&self, k: usize) -> ArithmeticTable {
        let mut t = ArithmeticTable::zeros(self.upper);
        t.values[1] = 1.0;
        let pp = self.prime_powers();
        for _ in 0..k {
            t = ArithmeticTable::convolve_sparse(&pp, &t);
        }
        t
    }

    /// a_k = (Λ·log) ∗ Λ_{k−1}.
    pub fn a_k(&self, k: usize) -> Result<ArithmeticTable> {
        if k < 1 {
            return Err(Error::domain("a_k requires k >= 1"));
        }
        let lam_log: Vec<(usize, f64)> = self
            .prime_powers()
            .into_iter()
            .map(|(d, l)| (d, l * (d as f64).ln()))
            .collect();
        Ok(ArithmeticTable::convolve_sparse(&lam_log, &self.lambda_k(k - 1)))
    }

    /// Λ⁽ᵏ⁾ from Λ⁽¹⁾ = Λ and Λ⁽ᵏ⁺¹⁾ = Λ⁽ᵏ⁾·log + Λ⁽ᵏ⁾ ∗ Λ.
    pub fn lambda_upper(&self, k: usize) -> Result<ArithmeticTable> {
        if k < 1 {
            return Err(Error::domain("lambda_upper requires k >= 1"));
        }
        let pp = self.prime_powers();
        let mut t = self.lambda.clone();
        for _ in 1..k {
            let conv = ArithmeticTable::convolve_sparse(&pp, &t);
            for n in 1..=self.upper {
                t.values[n] = t.values[n] * (n as f64).ln() + conv.values[n];
            }
        }
        Ok(t)
    }
}

/// Λ(n) by trial division.
pub fn von_mangoldt(n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("von_mangoldt requires n >= 1"));
    }
    if n == 1 {
        return Ok(0.0);
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            return Ok(if m == 1 { (p as f64).ln() } else { 0.0 });
        }
        p += 1;
    }
    Ok((n as f64).ln())
}

pub fn lambda_k(k: usize, upper: usize) -> ArithmeticTable {
    Sieve::new(upper).lambda_k(k)
}

pub fn a_k_coeffs(k: usize, upper: usize) -> Result<ArithmeticTable> {
    Sieve::new(upper).a_k(k)
}

pub fn lambda_upper(k: usize, upper: usize) -> Result<ArithmeticTable> {
    Sieve::new(upper).lambda_upper(k)
}

fn guard(x: f64, limit: f64) -> Result<usize> {
    if !(x <= limit) {
        return Err(Error::SizeGuard { value: x, limit });
    }
    Ok(if x < 1.0 { 0 } else { x.floor() as usize })
}

/// Σ_{mn≤x} f(n) = Σ_n f(n)·⌊x/n⌋.
fn divisor_weighted(f: &ArithmeticTable, x: usize) -> f64 {
    (1..=x)
        .filter(|&n| f.values[n] != 0.0)
        .map(|n| f.values[n] * (x / n) as f64)
        .collect::<NeumaierSum>()
        .value()
}

/// Brute-force A_{k,j}(x), A_k(x) (hyperbola form), or A_k(x) (plain form).
pub fn brute_sum_a(kind: SumDefinition, k: usize, j: usize, x: f64) -> Result<SumRecord> {
    let xi = guard(x, CONVOLUTION_LIMIT)?;
    if k < 1 {
        return Err(Error::domain("brute_sum_a requires k >= 1"));
    }
    let value = if xi < 2 {
        0.0
    } else {
        let a = Sieve::new(xi).a_k(k)?;
        match kind {
            SumDefinition::AKj => {
                // P_j(y) = Σ_{m≤y} (log m)^j, prefix sums.
                let mut prefix = vec![0.0; xi + 1];
                let mut run = NeumaierSum::new();
                for m in 1..=xi {
                    run.add((m as f64).ln().powi(j as i32));
                    prefix[m] = run.value();
                }
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * (2..=xi)
                    .filter(|&n| a.values[n] != 0.0)
                    .map(|n| a.values[n] * prefix[xi / n])
                    .collect::<NeumaierSum>()
                    .value()
            }
            SumDefinition::AK2 => divisor_weighted(&a, xi),
            SumDefinition::AK3 => a.values[1..].iter().copied().collect::<NeumaierSum>().value(),
            other => {
                return Err(Error::Mismatch(format!("{other:?} is not an A-sum")));
            }
        }
    };
    Ok(SumRecord {
        x,
        value,
        definition: kind,
    })
}

/// Σ_{m₁m₂≤x} Λ(m₁)(log m₁)ⁿ.
pub fn brute_sum_psi_n(n: usize, x: f64) -> Result<SumRecord> {
    let xi = guard(x, CONVOLUTION_LIMIT)?;
    let value = if xi < 2 {
        0.0
    } else {
        let sieve = Sieve::new(xi);
        let lam = sieve.von_mangoldt();
        let mut weighted = ArithmeticTable::zeros(xi);
        for m in 2..=xi {
            weighted.values[m] = lam.values[m] * (m as f64).ln().powi(n as i32);
        }
        divisor_weighted(&weighted, xi)
    };
    Ok(SumRecord {
        x,
        value,
        definition: SumDefinition::PsiN,
    })
}

/// Σ_{m≤x} log m.
pub fn brute_sum_log(x: f64) -> Result<SumRecord> {
    let xi = guard(x, LOG_SUM_LIMIT)?;
    let value = (2..=xi).map(|m| (m as f64).ln()).collect::<NeumaierSum>().value();
    Ok(SumRecord {
        x,
        value,
        definition: SumDefinition::LogSum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn second_log_derivative_coefficients() {
        // ζ''/ζ has coefficients (log²) ∗ μ = Λ⁽²⁾.
        let upper = 50;
        let log2 = ArithmeticTable {
            upper,
            values: (0..=upper).map(|m| if m == 0 { 0.0 } else { (m as f64).ln().powi(2) }).collect(),
        };
        let one = ArithmeticTable {
            upper,
            values: (0..=upper).map(|m| if m == 0 { 0.0 } else { 1.0 }).collect(),
        };
        let q = log2.dirichlet_divide(&one).unwrap();
        let want = lambda_upper(2, upper).unwrap();
        for m in 1..=upper {
            assert!((q.get(m) - want.get(m)).abs() < 1e-12, "m={m}");
        }
        assert!((q.convolve(&one).get(36) - log2.get(36)).abs() < 1e-12);
    }

    #[test]
    fn von_mangoldt_values() {
        assert!(close(von_mangoldt(8).unwrap(), 2f64.ln()));
        assert_eq!(von_mangoldt(6).unwrap(), 0.0);
        assert_eq!(von_mangoldt(1).unwrap(), 0.0);
        assert!(close(von_mangoldt(97).unwrap(), 97f64.ln()));
        assert!(von_mangoldt(0).is_err());
    }

    #[test]
    fn sieve_matches_trial_division() {
        let s = Sieve::new(2000);
        for n in 1..=2000u64 {
            assert!(close(s.von_mangoldt().get(n as usize), von_mangoldt(n).unwrap()), "n={n}");
        }
    }

    #[test]
    fn chebyshev_psi_100() {
        // Direct enumeration of prime powers ≤ 100.
        let mut psi = 0.0;
        for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97] {
            let mut q = p;
            while q <= 100 {
                psi += (p as f64).ln();
                q *= p;
            }
        }
        let s: f64 = (1..=100).map(|n| von_mangoldt(n).unwrap()).sum();
        assert!(close(s, psi));
        assert!((s - 94.045).abs() < 1e-3);
    }

    #[test]
    fn lambda_k_basics() {
        let l0 = lambda_k(0, 50);
        assert_eq!(l0.get(1), 1.0);
        assert!(l0.values[2..].iter().all(|&v| v == 0.0));
        let l1 = lambda_k(1, 50);
        for n in 1..=50 {
            assert!(close(l1.get(n), von_mangoldt(n as u64).unwrap()));
        }
        let l2 = lambda_k(2, 50);
        assert!(close(l2.get(12), 2.0 * 2f64.ln() * 3f64.ln()));
    }

    #[test]
    fn a_k_basics() {
        let a1 = a_k_coeffs(1, 100).unwrap();
        for n in 1..=100 {
            let want = von_mangoldt(n as u64).unwrap() * (n as f64).ln();
            assert!(close(a1.get(n), want));
        }
        let a2 = a_k_coeffs(2, 10).unwrap();
        assert!(close(a2.get(4), 2f64.ln().powi(3)));
        for k in 1..5 {
            assert_eq!(a_k_coeffs(k, 10).unwrap().get(1), 0.0);
        }
        assert!(a_k_coeffs(0, 10).is_err());
    }

    #[test]
    fn lambda_upper_recurrence() {
        let l2 = lambda_upper(2, 200).unwrap();
        let lam = lambda_k(1, 200);
        let lam2 = lambda_k(2, 200);
        for n in 1..=200 {
            assert!(close(l2.get(n), lam.get(n) * (n as f64).ln() + lam2.get(n)));
        }
        assert!(close(l2.get(4), 3.0 * 2f64.ln().powi(2)));
        for k in 1..5 {
            assert_eq!(lambda_upper(k, 10).unwrap().get(1), 0.0);
        }
    }

    #[test]
    fn convolution_is_commutative() {
        let s = Sieve::new(10_000);
        let lam = s.von_mangoldt().clone();
        let mut prev = s.lambda_k(1);
        for k in 2..=5 {
            let left = prev.convolve(&lam);
            let right = lam.convolve(&prev);
            let direct = s.lambda_k(k);
            for m in 1..=10_000 {
                assert!((left.get(m) - right.get(m)).abs() <= 1e-10 * left.get(m).abs().max(1.0));
                assert!((left.get(m) - direct.get(m)).abs() <= 1e-10 * left.get(m).abs().max(1.0));
            }
            prev = direct;
        }
    }

    #[test]
    fn a_kj_small_double_loop() {
        let a1 = a_k_coeffs(1, 10).unwrap();
        let mut want = 0.0;
        for m1 in 1..=10usize {
            for m2 in 1..=10usize {
                if m1 * m2 <= 10 {
                    want += a1.get(m2);
                }
            }
        }
        let got = brute_sum_a(SumDefinition::AKj, 1, 0, 10.0).unwrap().value;
        assert!(close(got, want));
        assert_eq!(brute_sum_a(SumDefinition::AK3, 3, 0, 1.0).unwrap().value, 0.0);
    }

    #[test]
    fn psi_n_small() {
        let want: f64 = (1..=10u64).map(|m| von_mangoldt(m).unwrap() * (10 / m) as f64).sum();
        assert!(close(brute_sum_psi_n(0, 10.0).unwrap().value, want));
        assert_eq!(brute_sum_psi_n(3, 1.5).unwrap().value, 0.0);
    }

    #[test]
    fn log_sum() {
        assert!(close(brute_sum_log(3.0).unwrap().value, 2f64.ln() + 3f64.ln()));
        assert_eq!(brute_sum_log(1.9).unwrap().value, 0.0);
        let x = 1e6;
        let v = brute_sum_log(x).unwrap().value;
        assert!((v - (x * x.ln() - x)).abs() <= 10.0 * x.ln());
    }

    #[test]
    fn size_guards() {
        assert!(matches!(brute_sum_psi_n(1, 2e7), Err(Error::SizeGuard { .. })));
        assert!(matches!(brute_sum_a(SumDefinition::AK3, 1, 0, 2e7), Err(Error::SizeGuard { .. })));
        assert!(matches!(brute_sum_log(2e8), Err(Error::SizeGuard { .. })));
    }
}
