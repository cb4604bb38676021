//! Asymptotic coefficient tables for discrete moments over λ and γ.
//!
//! Every expansion is in powers of L = log(T/2π), normalised by T/2π.
//! Coefficients come from truncated k-sums over the [`FamilyKind`] series,
//! combined by partial summation; [`printed`] holds closed forms and the
//! term-by-term formulas used as independent cross-checks.

mod partial;
pub mod printed;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::comb::{binomial, sign};
use crate::error::{Error, Result};
use crate::series::{
    log_deriv_zeta_a_coeffs, psi_n_residue_polynomial, residue_coefficients, FamilyBasis,
    FamilyKind, StieltjesTable,
};
use crate::summation::NeumaierSum;

use partial::{partial_summation, ExponentWindow};

/// Default cap on the k-sums.
pub const K_MAX: usize = 80;
/// A k-term is negligible below this fraction of the running maximum.
pub const K_SUM_REL_TOL: f64 = 1e-15;
/// Consecutive negligible terms needed to stop.
pub const K_SUM_QUIET_TERMS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// Σ ζ⁽ⁿ⁾(1/2+iλ), n ≥ 1.
    Thm1,
    /// Thm1 at n = 1.
    Corollary,
    /// Σ ζ(1/2+iλ).
    Thm2,
    /// Σ χ(1/2+iλ).
    Thm3,
    /// Σ χ(1/2+iγ).
    Thm4,
    /// Σ (ζ'/ζ)⁽ⁿ⁾-type sum over γ, closed form.
    Hugpc,
    /// Σ Z(λ)², first two terms.
    Hlpc2,
}

impl Theorem {
    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::Thm1 => "thm1",
            Theorem::Corollary => "corollary",
            Theorem::Thm2 => "thm2",
            Theorem::Thm3 => "thm3",
            Theorem::Thm4 => "thm4",
            Theorem::Hugpc => "hugpc",
            Theorem::Hlpc2 => "hlpc2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "thm1" => Theorem::Thm1,
            "corollary" => Theorem::Corollary,
            "thm2" => Theorem::Thm2,
            "thm3" => Theorem::Thm3,
            "thm4" => Theorem::Thm4,
            "hugpc" => Theorem::Hugpc,
            "hlpc2" => Theorem::Hlpc2,
            _ => return None,
        })
    }
}

/// `positive[i]` multiplies L^{top−i} with top = positive.len() − 1;
/// `negative[m−1]` multiplies L^{−m}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub theorem: Theorem,
    pub n: usize,
    #[serde(rename = "K")]
    pub k_depth: usize,
    pub positive: Vec<f64>,
    pub negative: Vec<f64>,
    /// Last k included in the k-sum; 0 when no k-sum was needed.
    pub k_truncation: usize,
    pub tail_estimate: f64,
}

impl CoefficientTable {
    pub fn top_power(&self) -> i64 {
        self.positive.len() as i64 - 1
    }

    /// Coefficient of L^e, zero outside the table.
    pub fn coefficient(&self, e: i64) -> f64 {
        if e >= 0 {
            let top = self.top_power();
            if e > top {
                0.0
            } else {
                self.positive[(top - e) as usize]
            }
        } else {
            self.negative.get((-e - 1) as usize).copied().unwrap_or(0.0)
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.positive
            .iter()
            .chain(&self.negative)
            .fold(0.0, |m: f64, v| m.max(v.abs()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    fn from_window(
        theorem: Theorem,
        n: usize,
        k_depth: usize,
        w: &ExponentWindow,
        k_truncation: usize,
        tail_estimate: f64,
    ) -> Self {
        Self {
            theorem,
            n,
            k_depth,
            positive: (0..=w.hi).rev().map(|e| w.get(e)).collect(),
            negative: (1..=k_depth as i64).map(|m| w.get(-m)).collect(),
            k_truncation,
            tail_estimate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "L")]
    pub l: f64,
    pub value: f64,
    /// Each term already multiplied by T/2π, highest power first.
    pub per_term: Vec<f64>,
}

impl Prediction {
    /// Sum of the first `depth` terms.
    pub fn partial(&self, depth: usize) -> f64 {
        self.per_term.iter().take(depth).copied().collect::<NeumaierSum>().value()
    }
}

/// L = log(T/2π).
pub fn log_height(t: f64) -> f64 {
    (t / (2.0 * PI)).ln()
}

pub fn evaluate_prediction(table: &CoefficientTable, t: f64) -> Result<Prediction> {
    let l = log_height(t);
    if !(l > 0.0) {
        return Err(Error::domain(format!("prediction needs T > 2π, got T = {t}")));
    }
    let x = t / (2.0 * PI);
    let top = table.top_power();
    let mut per_term = Vec::with_capacity(table.positive.len() + table.negative.len());
    for (i, c) in table.positive.iter().enumerate() {
        per_term.push(x * c * l.powi((top - i as i64) as i32));
    }
    for (m, c) in table.negative.iter().enumerate() {
        per_term.push(x * c * l.powi(-(m as i32 + 1)));
    }
    let value = per_term.iter().copied().collect::<NeumaierSum>().value();
    Ok(Prediction { t, l, value, per_term })
}

/// Sum of a k-indexed sequence of coefficient windows with adaptive stopping.
struct KSum {
    acc: Vec<NeumaierSum>,
    running_max: f64,
    quiet: usize,
    recent: Vec<f64>,
}

impl KSum {
    fn new(len: usize) -> Self {
        Self {
            acc: vec![NeumaierSum::new(); len],
            running_max: 0.0,
            quiet: 0,
            recent: Vec::new(),
        }
    }

    /// Returns true once the sum may stop.
    fn push(&mut self, term: &[f64], k: usize, k_min: usize) -> Result<bool> {
        let norm = term
            .iter()
            .fold(0.0_f64, |m, v| if v.is_nan() { f64::NAN } else { m.max(v.abs()) });
        if !norm.is_finite() {
            return Err(Error::NonConvergence(format!("k-sum term {k} is not finite")));
        }
        for (a, t) in self.acc.iter_mut().zip(term) {
            a.add(*t);
        }
        self.running_max = self.running_max.max(norm);
        self.recent.push(norm);
        if self.recent.len() > K_SUM_QUIET_TERMS {
            self.recent.remove(0);
        }
        if norm < K_SUM_REL_TOL * self.running_max {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        Ok(k > k_min && self.quiet >= K_SUM_QUIET_TERMS)
    }

    fn tail_estimate(&self) -> f64 {
        self.recent.iter().sum()
    }

    fn values(&self) -> Vec<f64> {
        self.acc.iter().map(NeumaierSum::value).collect()
    }
}

/// Builds coefficient tables. Immutable once constructed.
#[derive(Debug, Clone)]
pub struct Engine {
    stieltjes: StieltjesTable,
    k_max: usize,
    width_padding: usize,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new(StieltjesTable::embedded())
    }
}

impl Engine {
    pub fn new(stieltjes: StieltjesTable) -> Self {
        Self {
            stieltjes,
            k_max: K_MAX,
            width_padding: 0,
        }
    }

    pub fn with_k_max(mut self, k_max: usize) -> Self {
        self.k_max = k_max;
        self
    }

    /// Carries this many extra series coefficients beyond the minimum needed.
    pub fn with_width_padding(mut self, extra: usize) -> Self {
        self.width_padding = extra;
        self
    }

    pub fn stieltjes(&self) -> &StieltjesTable {
        &self.stieltjes
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    fn width(&self, needed: usize) -> Result<usize> {
        let w = needed + self.width_padding;
        let available = self.stieltjes.max_width();
        if w > available {
            return Err(Error::WidthExceeded {
                requested: w,
                available,
            });
        }
        Ok(w)
    }

    /// Runs Σ_k f(k) until the adaptive stop; f fills a zeroed window.
    fn k_sum(
        &self,
        window: &ExponentWindow,
        k_min: usize,
        mut f: impl FnMut(usize, &mut ExponentWindow) -> Result<()>,
    ) -> Result<(ExponentWindow, usize, f64)> {
        let mut ks = KSum::new(window.values.len());
        let mut term = window.clone();
        for k in 1..=self.k_max {
            term.clear();
            f(k, &mut term)?;
            if ks.push(&term.values, k, k_min)? {
                let mut out = window.clone();
                out.values = ks.values();
                return Ok((out, k, ks.tail_estimate()));
            }
        }
        Err(Error::NonConvergence(format!(
            "k-sum did not settle by k = {} (last terms {:.3e})",
            self.k_max,
            ks.tail_estimate()
        )))
    }

    /// Shared assembly for Σ ζ⁽ⁿ⁾(1/2+iλ), n ≥ 0.
    fn zeta_moment(&self, n: usize, depth: usize) -> Result<(ExponentWindow, usize, f64)> {
        let width = self.width(n + depth + 2)?;
        let basis = FamilyBasis::new(width, n, &self.stieltjes)?;
        let window = ExponentWindow::new(-(depth as i64), n as i64 + 1);
        let mut power = basis.neg_log_deriv_power(0);
        let outer = sign(n + 1);
        let (mut w, kt, tail) = self.k_sum(&window, depth + n + 2, |k, term| {
            if k > 1 {
                power = basis.times_neg_log_deriv(&power);
            }
            let two_k = 2f64.powi(k as i32);
            for j in 0..=n {
                let c = basis.family_from_power(FamilyKind::CKj, j, &power)?;
                let degree = k + j + 1;
                let b = residue_coefficients(&c, degree, width);
                let p = (k + j) as i64 - n as i64;
                partial_summation(&b, degree, p, outer * two_k * binomial(n, j), term);
            }
            Ok(())
        })?;
        // Σ over λ of the I₂,₁ piece: the residue of (−1)^{n+1}(ζ'/ζ)⁽ⁿ⁾ζ/s.
        let s = psi_n_residue_polynomial(n, &self.stieltjes)?;
        for (l, bl) in s.iter().enumerate() {
            w.add(n as i64 + 1 - l as i64, sign(n) * bl);
        }
        if n == 0 {
            w.add(1, -1.0);
            w.add(0, 1.0);
        }
        w.values.iter_mut().for_each(|v| *v = -*v);
        Ok((w, kt, tail))
    }

    /// Σ_{0<λ≤T} ζ⁽ⁿ⁾(1/2+iλ): n+2 coefficients L^{n+1}..L⁰ and b₁..b_K.
    pub fn thm1(&self, n: usize, depth: usize) -> Result<CoefficientTable> {
        if n < 1 {
            return Err(Error::domain("thm1 needs n >= 1; use thm2 for n = 0"));
        }
        if depth < 1 {
            return Err(Error::domain("thm1 needs K >= 1"));
        }
        let (w, kt, tail) = self.zeta_moment(n, depth)?;
        Ok(CoefficientTable::from_window(Theorem::Thm1, n, depth, &w, kt, tail))
    }

    pub fn corollary(&self, depth: usize) -> Result<CoefficientTable> {
        let mut t = self.thm1(1, depth)?;
        t.theorem = Theorem::Corollary;
        Ok(t)
    }

    /// Σ_{0<λ≤T} ζ(1/2+iλ): L¹, L⁰ and d₁..d_K.
    pub fn thm2(&self, depth: usize) -> Result<CoefficientTable> {
        let (w, kt, tail) = self.zeta_moment(0, depth)?;
        Ok(CoefficientTable::from_window(Theorem::Thm2, 0, depth, &w, kt, tail))
    }

    /// Σ_{0<λ≤T} χ(1/2+iλ): L⁰ and e₁..e_K.
    pub fn thm3(&self, depth: usize) -> Result<CoefficientTable> {
        if depth < 1 {
            return Err(Error::domain("thm3 needs K >= 1"));
        }
        let width = self.width(depth + 1)?;
        let basis = FamilyBasis::new(width, 0, &self.stieltjes)?;
        let window = ExponentWindow::new(-(depth as i64), 0);
        let mut power = basis.neg_log_deriv_power(0);
        let (mut w, kt, tail) = self.k_sum(&window, depth + 2, |k, term| {
            if k > 1 {
                power = basis.times_neg_log_deriv(&power);
            }
            let c = basis.family_from_power(FamilyKind::CK3, 0, &power)?;
            let b = residue_coefficients(&c, k, width);
            partial_summation(&b, k, k as i64, 2f64.powi(k as i32), term);
            Ok(())
        })?;
        w.add(0, -1.0);
        Ok(CoefficientTable::from_window(Theorem::Thm3, 0, depth, &w, kt, tail))
    }

    /// Σ_{0<γ≤T} χ(1/2+iγ) = −T/2π.
    pub fn thm4(&self) -> CoefficientTable {
        CoefficientTable {
            theorem: Theorem::Thm4,
            n: 0,
            k_depth: 0,
            positive: vec![-1.0],
            negative: Vec::new(),
            k_truncation: 0,
            tail_estimate: 0.0,
        }
    }

    /// The printed closed form with coefficients L^{n+1}..L⁰.
    pub fn hugpc(&self, n: usize) -> Result<CoefficientTable> {
        if n < 1 {
            return Err(Error::domain("hugpc needs n >= 1"));
        }
        let g = &self.stieltjes;
        let a = log_deriv_zeta_a_coeffs(self.width(n + 2)?, g)?;
        let s = sign(n + 1);
        let mut positive = vec![s / (n + 1) as f64];
        let mut partial = -1.0;
        let mut fact = 1.0;
        for k in 0..=n {
            if k > 0 {
                fact *= k as f64;
            }
            partial += g.gamma(k) / fact;
            positive.push(s * binomial(n, k) * sign(k) * fact * partial);
        }
        positive[n + 1] += fact * a[n];
        Ok(CoefficientTable {
            theorem: Theorem::Hugpc,
            n,
            k_depth: 0,
            positive,
            negative: Vec::new(),
            k_truncation: 0,
            tail_estimate: 0.0,
        })
    }

    /// Same expansion from the residue of Σ Λ(m₁)(log m₁)ⁿ, times (−1)^{n+1}.
    pub fn hugpc_from_residue(&self, n: usize) -> Result<CoefficientTable> {
        let s = sign(n + 1);
        let b = psi_n_residue_polynomial(n, &self.stieltjes)?;
        Ok(CoefficientTable {
            theorem: Theorem::Hugpc,
            n,
            k_depth: 0,
            positive: b.iter().map(|v| s * v).collect(),
            negative: Vec::new(),
            k_truncation: 0,
            tail_estimate: 0.0,
        })
    }

    /// Σ Z(λ)²: (e²−5)/2 L² + (5−e²−10γ₀+2e²γ₀) L.
    pub fn hlpc2(&self) -> CoefficientTable {
        let e2 = 2f64.exp();
        let g0 = self.stieltjes.gamma(0);
        CoefficientTable {
            theorem: Theorem::Hlpc2,
            n: 0,
            k_depth: 0,
            positive: vec![(e2 - 5.0) / 2.0, 5.0 - e2 - 10.0 * g0 + 2.0 * e2 * g0, 0.0],
            negative: Vec::new(),
            k_truncation: 0,
            tail_estimate: 0.0,
        }
    }

    /// The L^n coefficient of the I₂,₂ piece of the n-th derivative moment,
    /// before the final sign flip.
    pub fn i22_subleading(&self, n: usize) -> Result<f64> {
        let width = self.width(n + 2)?;
        let basis = FamilyBasis::new(width, n, &self.stieltjes)?;
        let window = ExponentWindow::new(n as i64, n as i64);
        let mut power = basis.neg_log_deriv_power(0);
        let (w, _, _) = self.k_sum(&window, n + 2, |k, term| {
            if k > 1 {
                power = basis.times_neg_log_deriv(&power);
            }
            for j in 0..=n {
                let c = basis.family_from_power(FamilyKind::CKj, j, &power)?;
                let degree = k + j + 1;
                let b = residue_coefficients(&c, degree, width);
                let p = (k + j) as i64 - n as i64;
                let scale = sign(n + 1) * 2f64.powi(k as i32) * binomial(n, j);
                partial_summation(&b, degree, p, scale, term);
            }
            Ok(())
        })?;
        Ok(w.get(n as i64))
    }
}

/// −T/2π; defined from T = 2π on, where L = 0 is harmless for a single L⁰ term.
pub fn thm4_prediction(t: f64) -> Result<Prediction> {
    if !(t >= 2.0 * PI) || !t.is_finite() {
        return Err(Error::domain(format!("prediction needs T >= 2π, got T = {t}")));
    }
    let v = -t / (2.0 * PI);
    Ok(Prediction {
        t,
        l: log_height(t),
        value: v,
        per_term: vec![v],
    })
}

pub fn hugpc_prediction(n: usize, t: f64) -> Result<Prediction> {
    evaluate_prediction(&Engine::default().hugpc(n)?, t)
}

pub fn hlpc2_prediction(t: f64) -> Result<Prediction> {
    evaluate_prediction(&Engine::default().hlpc2(), t)
}

/// Σ_{k≥1} 2ᵏ/(k!(k+n+1)) in closed form, via the incomplete-gamma identity.
pub fn incomplete_gamma_sum(n: usize) -> f64 {
    printed::incomplete_gamma_closed_form(n)
}
