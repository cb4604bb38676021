//! Laurent-series coefficient families about s = 1.

mod laurent;
mod stieltjes;

use serde::{Deserialize, Serialize};

use crate::comb::factorial;
use crate::error::{Error, Result};

pub use laurent::TruncatedLaurentSeries;
pub use stieltjes::StieltjesTable;

/// Which product a coefficient family expands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// (ζ'/ζ)' (−ζ'/ζ)^{k−1} ζ⁽ʲ⁾ / s, pole order k+j+2.
    CKj,
    /// (ζ'/ζ)' (−ζ'/ζ)^{k−1} ζ / s, pole order k+2.
    CK2,
    /// (ζ'/ζ)' (−ζ'/ζ)^{k−1} / s, pole order k+1.
    CK3,
}

impl FamilyKind {
    /// Pole order P at s = 1.
    pub fn pole_order(self, k: usize, j: usize) -> usize {
        match self {
            FamilyKind::CKj => k + j + 2,
            FamilyKind::CK2 => k + 2,
            FamilyKind::CK3 => k + 1,
        }
    }

    /// Top log power D = P − 1 of the residue polynomial.
    pub fn degree(self, k: usize, j: usize) -> usize {
        self.pole_order(k, j) - 1
    }
}

/// values[ℓ] is the coefficient of (s−1)^{−P+ℓ}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffFamily {
    pub kind: FamilyKind,
    pub k: usize,
    pub j: usize,
    pub values: Vec<f64>,
}

impl CoeffFamily {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// ζ(s) = 1/(s−1) + Σ (−1)ʲ γ_j (s−1)ʲ / j!.
pub fn zeta_series(width: usize, table: &StieltjesTable) -> Result<TruncatedLaurentSeries> {
    if width > table.max_width() || width == 0 {
        return Err(Error::WidthExceeded {
            requested: width,
            available: table.max_width(),
        });
    }
    let mut coeffs = Vec::with_capacity(width);
    coeffs.push(1.0);
    let mut fact = 1.0;
    for j in 0..width - 1 {
        if j > 0 {
            fact *= j as f64;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        coeffs.push(sign * table.gamma(j) / fact);
    }
    TruncatedLaurentSeries::new(-1, coeffs)
}

/// ζ'/ζ about s = 1.
pub fn log_deriv_zeta_series(width: usize, table: &StieltjesTable) -> Result<TruncatedLaurentSeries> {
    let z = zeta_series(width, table)?;
    Ok(z.derivative().mul(&z.reciprocal()?))
}

/// A_n, n = 0..width−2: the regular part ζ'/ζ(s) + 1/(s−1) = Σ A_n (s−1)ⁿ.
pub fn log_deriv_zeta_a_coeffs(width: usize, table: &StieltjesTable) -> Result<Vec<f64>> {
    let lz = log_deriv_zeta_series(width, table)?;
    Ok(lz.coeffs()[1..].to_vec())
}

/// Precomputed building blocks shared by every family at one width.
#[derive(Debug, Clone)]
pub struct FamilyBasis {
    width: usize,
    zeta_derivs: Vec<TruncatedLaurentSeries>,
    neg_log_deriv: TruncatedLaurentSeries,
    /// (ζ'/ζ)' · 1/s.
    head: TruncatedLaurentSeries,
}

impl FamilyBasis {
    pub fn new(width: usize, max_j: usize, table: &StieltjesTable) -> Result<Self> {
        let z = zeta_series(width, table)?;
        let lz = z.derivative().mul(&z.reciprocal()?);
        let head = lz.derivative().mul(&TruncatedLaurentSeries::one_over_s(width));
        let mut zeta_derivs = vec![z];
        for j in 1..=max_j {
            let next = zeta_derivs[j - 1].derivative();
            zeta_derivs.push(next);
        }
        Ok(Self {
            width,
            zeta_derivs,
            neg_log_deriv: lz.scale(-1.0),
            head,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// (−ζ'/ζ)^p.
    pub fn neg_log_deriv_power(&self, p: u32) -> TruncatedLaurentSeries {
        self.neg_log_deriv.powi(p)
    }

    /// (−ζ'/ζ)·f, for stepping k → k+1.
    pub fn times_neg_log_deriv(&self, f: &TruncatedLaurentSeries) -> TruncatedLaurentSeries {
        f.mul(&self.neg_log_deriv)
    }

    /// Family coefficients given (−ζ'/ζ)^{k−1}.
    pub fn family_from_power(
        &self,
        kind: FamilyKind,
        j: usize,
        power: &TruncatedLaurentSeries,
    ) -> Result<Vec<f64>> {
        let base = self.head.mul(power);
        let s = match kind {
            FamilyKind::CKj => {
                let zj = self.zeta_derivs.get(j).ok_or(Error::WidthExceeded {
                    requested: j,
                    available: self.zeta_derivs.len() - 1,
                })?;
                base.mul(zj)
            }
            FamilyKind::CK2 => base.mul(&self.zeta_derivs[0]),
            FamilyKind::CK3 => base,
        };
        Ok(s.coeffs().to_vec())
    }
}

/// c_ℓ for ℓ < len of one family.
pub fn c_family(
    kind: FamilyKind,
    k: usize,
    j: usize,
    len: usize,
    table: &StieltjesTable,
) -> Result<CoeffFamily> {
    if k < 1 {
        return Err(Error::domain("coefficient families need k >= 1"));
    }
    let j_eff = if kind == FamilyKind::CKj { j } else { 0 };
    let basis = FamilyBasis::new(len, j_eff, table)?;
    let values = basis.family_from_power(kind, j_eff, &basis.neg_log_deriv_power(k as u32 - 1))?;
    Ok(CoeffFamily {
        kind,
        k,
        j: j_eff,
        values,
    })
}

/// b_ℓ = c_ℓ/(D−ℓ)! for ℓ ≤ min(D, count−1).
pub fn residue_coefficients(values: &[f64], degree: usize, count: usize) -> Vec<f64> {
    let top = degree.min(count.saturating_sub(1)).min(values.len() - 1);
    (0..=top).map(|l| values[l] / factorial(degree - l)).collect()
}

/// Full residue polynomial: b_ℓ for ℓ = 0..=D, where the main term is x Σ b_ℓ (log x)^{D−ℓ}.
pub fn residue_polynomial(
    kind: FamilyKind,
    k: usize,
    j: usize,
    table: &StieltjesTable,
) -> Result<Vec<f64>> {
    let d = kind.degree(k, j);
    let fam = c_family(kind, k, j, d + 1, table)?;
    Ok(residue_coefficients(&fam.values, d, d + 1))
}

/// Σ_{ℓ} b_ℓ (log x)^{D−ℓ}·x.
pub fn eval_residue_polynomial(b: &[f64], degree: usize, x: f64) -> f64 {
    let lx = x.ln();
    x * b
        .iter()
        .enumerate()
        .map(|(l, bl)| bl * lx.powi((degree - l) as i32))
        .sum::<f64>()
}

/// Residue polynomial (D = n+1) of (−1)^{n+1}(ζ'/ζ)⁽ⁿ⁾ ζ / s, whose main term
/// is Σ_{m₁m₂≤x} Λ(m₁)(log m₁)ⁿ.
pub fn psi_n_residue_polynomial(n: usize, table: &StieltjesTable) -> Result<Vec<f64>> {
    let width = n + 2;
    let z = zeta_series(width, table)?;
    let mut d = z.derivative().mul(&z.reciprocal()?);
    for _ in 0..n {
        d = d.derivative();
    }
    let sign = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let s = d
        .mul(&z)
        .mul(&TruncatedLaurentSeries::one_over_s(width))
        .scale(sign);
    Ok(residue_coefficients(s.coeffs(), n + 1, n + 2))
}
