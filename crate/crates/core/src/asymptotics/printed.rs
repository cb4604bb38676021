//! Closed forms and term-by-term coefficient formulas, kept separate from the
//! partial-summation assembly so each can check the other.

use crate::comb::{binomial, factorial, inv_factorial, sign};
use crate::error::Result;
use crate::series::{log_deriv_zeta_a_coeffs, FamilyBasis, FamilyKind};

use super::partial::ExponentWindow;
use super::Engine;

fn e2() -> f64 {
    2f64.exp()
}

/// Σ_{k=0}^{n} (−2)ᵏ/k!.
fn exp_minus_two_partial(n: usize) -> f64 {
    (0..=n).map(|k| (-2f64).powi(k as i32) / factorial(k)).sum()
}

/// Σ_{k≥n} (−2)ᵏ/k!, summed directly.
fn exp_minus_two_tail(n: usize) -> f64 {
    let mut term = (-2f64).powi(n as i32) / factorial(n);
    let mut s = 0.0_f64;
    let mut k = n;
    while term.abs() > 1e-18 * s.abs().max(f64::MIN_POSITIVE) || k < n + 2 {
        s += term;
        k += 1;
        term *= -2.0 / k as f64;
    }
    s
}

/// Σ_{k=1}^{k_max} 2ᵏ/(k!(k+n+1)).
pub fn incomplete_gamma_direct(n: usize, k_max: usize) -> f64 {
    (1..=k_max)
        .map(|k| 2f64.powi(k as i32) / (factorial(k) * (k + n + 1) as f64))
        .sum()
}

/// (e²−1)/(n+1) + (−1)^{n+1} n!/2^{n+1} (1 − e² Σ_{k=0}^{n+1} (−2)ᵏ/k!),
/// with the bracket evaluated as e² Σ_{k≥n+2} (−2)ᵏ/k! to avoid cancellation.
pub fn incomplete_gamma_closed_form(n: usize) -> f64 {
    let bracket = e2() * exp_minus_two_tail(n + 2);
    (e2() - 1.0) / (n + 1) as f64 + sign(n + 1) * factorial(n) / 2f64.powi(n as i32 + 1) * bracket
}

/// The same identity with the bracket taken literally.
pub fn incomplete_gamma_literal(n: usize) -> f64 {
    let bracket = 1.0 - e2() * exp_minus_two_partial(n + 1);
    (e2() - 1.0) / (n + 1) as f64 + sign(n + 1) * factorial(n) / 2f64.powi(n as i32 + 1) * bracket
}

/// Leading coefficient a_{n+1} of Σ ζ⁽ⁿ⁾(1/2+iλ).
pub fn thm1_leading(n: usize) -> f64 {
    let bracket = 1.0 - e2() * exp_minus_two_partial(n + 1);
    sign(n) * ((e2() - 2.0) / (n + 1) as f64 + sign(n + 1) * factorial(n) / 2f64.powi(n as i32 + 1) * bracket)
}

/// −(e²−3)/4, (e²−3+2γ₀)/2, (3−e²(1+2γ₀+2γ₁))/2 as printed.
pub fn corollary(g0: f64, g1: f64) -> [f64; 3] {
    [
        -(e2() - 3.0) / 4.0,
        (e2() - 3.0 + 2.0 * g0) / 2.0,
        (3.0 - e2() * (1.0 + 2.0 * g0 + 2.0 * g1)) / 2.0,
    ]
}

/// (e²−3)/2 and (3−e²−4γ₀)/2.
pub fn thm2(g0: f64) -> [f64; 2] {
    [(e2() - 3.0) / 2.0, (3.0 - e2() - 4.0 * g0) / 2.0]
}

/// e²−2 and e₁ = −4e²γ₀.
pub fn thm3(g0: f64) -> [f64; 2] {
    [e2() - 2.0, -4.0 * e2() * g0]
}

/// (−1)^{n+1}(1 − (1+e²)γ₀ + (−1)^{n+1}(n+1)!/2^{n+1}(−1+2γ₀)(1 − e² Σ_{k≤n}(−2)ᵏ/k!)).
pub fn i22_display(n: usize, g0: f64) -> f64 {
    let inner = 1.0 - e2() * exp_minus_two_partial(n);
    sign(n + 1)
        * (1.0 - (1.0 + e2()) * g0
            + sign(n + 1) * factorial(n + 1) / 2f64.powi(n as i32 + 1) * (-1.0 + 2.0 * g0) * inner)
}

impl Engine {
    fn families_k_sum(
        &self,
        n: usize,
        width: usize,
        k_min: usize,
        mut f: impl FnMut(usize, usize, &[f64]) -> f64,
    ) -> Result<f64> {
        let basis = FamilyBasis::new(width, n, self.stieltjes())?;
        let window = ExponentWindow::new(0, 0);
        let mut power = basis.neg_log_deriv_power(0);
        let (w, _, _) = self.k_sum(&window, k_min, |k, term| {
            if k > 1 {
                power = basis.times_neg_log_deriv(&power);
            }
            let mut acc = 0.0;
            for j in 0..=n {
                let c = basis.family_from_power(FamilyKind::CKj, j, &power)?;
                acc += 2f64.powi(k as i32) * binomial(n, j) * f(k, j, &c);
            }
            term.add(0, acc);
            Ok(())
        })?;
        Ok(w.get(0))
    }

    /// a_{n−ℓ} from the term-by-term formula for the non-negative log powers,
    /// including the n!A_n contribution at ℓ = n.
    pub fn thm1_subleading_termwise(&self, n: usize, l: usize) -> Result<f64> {
        let width = self.width(n + 2)?;
        let bracket = self.families_k_sum(n, width, n + 2, |k, j, c| {
            let p = (k + j) as f64 - n as f64;
            let kj = (k + j) as i64;
            let li = l as i64;
            let mut s = c[l + 1] * inv_factorial(kj - li) + p * c[l] * inv_factorial(kj + 1 - li);
            for m in 0..l {
                // (n−m)(n−m−1)…(n−l+1)
                let falling: f64 = ((n - l + 1)..=(n - m)).map(|q| q as f64).product();
                s += p * sign(l - m) * falling * c[m] * inv_factorial(kj + 1 - m as i64);
            }
            s
        })?;
        let g = self.stieltjes();
        let partial: f64 = -1.0 + (0..=l).map(|m| g.gamma(m) / factorial(m)).sum::<f64>();
        let mut v = sign(n) * bracket
            + sign(n + 1) * binomial(n, l) * sign(l) * factorial(l) * partial;
        if l == n {
            let a = log_deriv_zeta_a_coeffs(width, g)?;
            v += factorial(n) * a[n];
        }
        Ok(v)
    }

    /// b_m = (−1)ⁿ Σ_k 2ᵏ Σ_j C(n,j) β_m^{k,j}. β uses the binomial rewrite
    /// with (p−1)! when p = k+j−n ≥ 1 and the unsimplified sum otherwise.
    pub fn thm1_negative_termwise(&self, n: usize, m: usize) -> Result<f64> {
        let width = self.width(n + m + 2)?;
        let v = self.families_k_sum(n, width, n + m + 2, |k, j, c| beta(n, m, k, j, c))?;
        Ok(sign(n) * v)
    }

    /// d_m = Σ_k 2ᵏ [c_{k,m+1}/(k−m)! + (m−1)!/(k−1)! Σ_{ℓ<min(m,k+1)} C(k,ℓ) c_{k,ℓ+1}].
    pub fn thm2_negative_termwise(&self, m: usize) -> Result<f64> {
        let width = self.width(m + 2)?;
        self.families_k_sum(0, width, m + 2, |k, _, c| {
            let mut s = c[m + 1] * inv_factorial(k as i64 - m as i64);
            let w = factorial(m - 1) / factorial(k - 1);
            for l in 0..m.min(k + 1) {
                s += w * binomial(k, l) * c[l + 1];
            }
            s
        })
    }

    /// e_m = Σ_k 2ᵏ [c_{k,m}/(k−m)! + (m−1)!/(k−1)! Σ_{ℓ<min(m,k+1)} C(k,ℓ) c_{k,ℓ}].
    pub fn thm3_negative_termwise(&self, m: usize) -> Result<f64> {
        let width = self.width(m + 1)?;
        let basis = FamilyBasis::new(width, 0, self.stieltjes())?;
        let window = ExponentWindow::new(0, 0);
        let mut power = basis.neg_log_deriv_power(0);
        let (w, _, _) = self.k_sum(&window, m + 2, |k, term| {
            if k > 1 {
                power = basis.times_neg_log_deriv(&power);
            }
            let c = basis.family_from_power(FamilyKind::CK3, 0, &power)?;
            let mut s = c[m] * inv_factorial(k as i64 - m as i64);
            let w = factorial(m - 1) / factorial(k - 1);
            for l in 0..m.min(k + 1) {
                s += w * binomial(k, l) * c[l];
            }
            term.add(0, 2f64.powi(k as i32) * s);
            Ok(())
        })?;
        Ok(w.get(0))
    }
}

fn beta(n: usize, m: usize, k: usize, j: usize, c: &[f64]) -> f64 {
    let p = (k + j) as i64 - n as i64;
    let first = c[m + n + 1] * inv_factorial(p - m as i64);
    let tail = if p >= 1 {
        let pu = p as usize;
        let top = if m as i64 <= p { m - 1 } else { pu };
        let s: f64 = (0..=top).map(|l| binomial(pu, l) * c[l + n + 1]).sum();
        factorial(m - 1) / factorial(pu - 1) * s
    } else {
        // p·Σ_{ℓ=1}^{m} c_{ℓ+n}/(p+1−ℓ)! · (m−1)!/(ℓ−1)!
        let s: f64 = (1..=m)
            .map(|l| c[l + n] * inv_factorial(p + 1 - l as i64) / factorial(l - 1))
            .sum();
        p as f64 * factorial(m - 1) * s
    };
    first + tail
}
