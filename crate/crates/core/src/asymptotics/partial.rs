//! Partial summation of a residue polynomial against (log x)^{−p}.
//!
//! Given a main term x Σ_ℓ b_ℓ (log x)^{D−ℓ} for a coefficient sum, the weighted
//! sum Σ_{m≤X} a(m) (log m)^{−p} has main term X·Σ b_ℓ L^{D−ℓ−p} plus
//! p·Σ b_ℓ ∫ (log x)^{D−ℓ−p−1} dx, the integral expanded in powers of L.

use crate::comb::factorial;

/// Coefficients indexed by exponent over the window [lo, hi].
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ExponentWindow {
    pub lo: i64,
    pub hi: i64,
    pub values: Vec<f64>,
}

impl ExponentWindow {
    pub fn new(lo: i64, hi: i64) -> Self {
        Self {
            lo,
            hi,
            values: vec![0.0; (hi - lo + 1) as usize],
        }
    }

    pub fn add(&mut self, exp: i64, v: f64) {
        if exp >= self.lo && exp <= self.hi {
            self.values[(exp - self.lo) as usize] += v;
        }
    }

    pub fn get(&self, exp: i64) -> f64 {
        if exp >= self.lo && exp <= self.hi {
            self.values[(exp - self.lo) as usize]
        } else {
            0.0
        }
    }

    pub fn clear(&mut self) {
        self.values.iter_mut().for_each(|v| *v = 0.0);
    }
}

/// Adds scale × (expansion of Σ_{m≤X} a(m)(log m)^{−p}) / X into `out`, keeping
/// exponents down to out.lo. `b[ℓ]` multiplies (log x)^{D−ℓ}.
pub(crate) fn partial_summation(b: &[f64], degree: usize, p: i64, scale: f64, out: &mut ExponentWindow) {
    let depth = -out.lo;
    let pf = p as f64;
    for (l, &bl) in b.iter().enumerate() {
        if bl == 0.0 {
            continue;
        }
        let e = degree as i64 - l as i64 - p;
        out.add(e, scale * bl);
        if p == 0 {
            continue;
        }
        let q = e - 1;
        let w = scale * pf * bl;
        if q >= 0 {
            // ∫ (log x)^q dx = x Σ_r (−1)^r q!/(q−r)! (log x)^{q−r}
            let qf = factorial(q as usize);
            for r in 0..=q {
                let s = if r % 2 == 0 { 1.0 } else { -1.0 };
                out.add(q - r, w * s * qf / factorial((q - r) as usize));
            }
        } else {
            // ∫ (log x)^{−m} dx = x Σ_{r≥m} (r−1)!/(m−1)! (log x)^{−r}
            let m = -q;
            let mf = factorial((m - 1) as usize);
            for r in m..=depth {
                out.add(-r, w * factorial((r - 1) as usize) / mf);
            }
        }
    }
}
