//! Truncated Laurent series about s = 1 with explicit trustworthy width.

use std::ops::{Add, Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Σ_{i < width} coeffs[i]·(s−1)^{min_order+i}; nothing is known past the width.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedLaurentSeries {
    min_order: i32,
    coeffs: Vec<f64>,
}

impl TruncatedLaurentSeries {
    pub fn new(min_order: i32, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::WidthExceeded {
                requested: 1,
                available: 0,
            });
        }
        Ok(Self { min_order, coeffs })
    }

    /// 1 + 0·(s−1) + … to the given width.
    pub fn unit(width: usize) -> Self {
        let mut coeffs = vec![0.0; width.max(1)];
        coeffs[0] = 1.0;
        Self { min_order: 0, coeffs }
    }

    /// s = 1 + (s−1).
    pub fn s_series(width: usize) -> Self {
        let mut coeffs = vec![0.0; width.max(1)];
        coeffs[0] = 1.0;
        if width > 1 {
            coeffs[1] = 1.0;
        }
        Self { min_order: 0, coeffs }
    }

    /// 1/s = Σ (−1)ʲ (s−1)ʲ.
    pub fn one_over_s(width: usize) -> Self {
        let coeffs = (0..width.max(1))
            .map(|j| if j % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        Self { min_order: 0, coeffs }
    }

    pub fn min_order(&self) -> i32 {
        self.min_order
    }

    pub fn width(&self) -> usize {
        self.coeffs.len()
    }

    /// Highest exponent whose coefficient is known.
    pub fn top_order(&self) -> i32 {
        self.min_order + self.coeffs.len() as i32 - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of (s−1)^exp; an error past the trustworthy width.
    pub fn coeff(&self, exp: i32) -> Result<f64> {
        if exp > self.top_order() {
            return Err(Error::WidthExceeded {
                requested: (exp - self.min_order + 1) as usize,
                available: self.width(),
            });
        }
        if exp < self.min_order {
            return Ok(0.0);
        }
        Ok(self.coeffs[(exp - self.min_order) as usize])
    }

    /// Keep only the first `width` coefficients.
    pub fn truncated(&self, width: usize) -> Self {
        let w = width.clamp(1, self.width());
        Self {
            min_order: self.min_order,
            coeffs: self.coeffs[..w].to_vec(),
        }
    }

    /// Multiply by (s−1)^m.
    pub fn shift(&self, m: i32) -> Self {
        Self {
            min_order: self.min_order + m,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            min_order: self.min_order,
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// Cauchy product; the width is the smaller of the two.
    pub fn mul(&self, other: &Self) -> Self {
        let w = self.width().min(other.width());
        let a = &self.coeffs;
        let b = &other.coeffs;
        let coeffs = (0..w)
            .map(|i| (0..=i).map(|p| a[p] * b[i - p]).sum())
            .collect();
        Self {
            min_order: self.min_order + other.min_order,
            coeffs,
        }
    }

    /// Sum; known up to the smaller of the two top orders.
    pub fn add(&self, other: &Self) -> Self {
        let lo = self.min_order.min(other.min_order);
        let hi = self.top_order().min(other.top_order());
        let coeffs = (lo..=hi.max(lo))
            .map(|e| {
                let a = if e >= self.min_order { self.coeffs[(e - self.min_order) as usize] } else { 0.0 };
                let b = if e >= other.min_order { other.coeffs[(e - other.min_order) as usize] } else { 0.0 };
                a + b
            })
            .collect();
        Self { min_order: lo, coeffs }
    }

    /// 1/f, keeping the width.
    pub fn reciprocal(&self) -> Result<Self> {
        let c = &self.coeffs;
        if c[0] == 0.0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let w = c.len();
        let mut r = vec![0.0; w];
        r[0] = 1.0 / c[0];
        for i in 1..w {
            let s: f64 = (1..=i).map(|p| c[p] * r[i - p]).sum();
            r[i] = -s / c[0];
        }
        Ok(Self {
            min_order: -self.min_order,
            coeffs: r,
        })
    }

    /// f^k for k ≥ 0.
    pub fn powi(&self, k: u32) -> Self {
        let mut out = Self::unit(self.width());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// d/ds, term by term; the width is unchanged.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * (self.min_order + i as i32) as f64)
            .collect();
        Self {
            min_order: self.min_order - 1,
            coeffs,
        }
    }

    /// Value of the truncated sum at real s ≠ 1.
    pub fn eval(&self, s: f64) -> f64 {
        let u = s - 1.0;
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c;
        }
        acc * u.powi(self.min_order)
    }
}

impl Mul for &TruncatedLaurentSeries {
    type Output = TruncatedLaurentSeries;
    fn mul(self, rhs: Self) -> TruncatedLaurentSeries {
        TruncatedLaurentSeries::mul(self, rhs)
    }
}

impl Add for &TruncatedLaurentSeries {
    type Output = TruncatedLaurentSeries;
    fn add(self, rhs: Self) -> TruncatedLaurentSeries {
        TruncatedLaurentSeries::add(self, rhs)
    }
}

impl Neg for &TruncatedLaurentSeries {
    type Output = TruncatedLaurentSeries;
    fn neg(self) -> TruncatedLaurentSeries {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn series(min_order: i32, c: &[f64]) -> TruncatedLaurentSeries {
        TruncatedLaurentSeries::new(min_order, c.to_vec()).unwrap()
    }

    #[test]
    fn one_over_s_coefficients_and_value() {
        let r = TruncatedLaurentSeries::one_over_s(6);
        assert_eq!(r.coeffs(), &[1.0, -1.0, 1.0, -1.0, 1.0, -1.0]);
        let p = r.mul(&TruncatedLaurentSeries::s_series(6));
        assert_eq!(p.coeffs(), TruncatedLaurentSeries::unit(6).coeffs());
        let v = TruncatedLaurentSeries::one_over_s(30).eval(1.1);
        assert!((v - 1.0 / 1.1).abs() < 1e-14);
    }

    #[test]
    fn derivative_of_simple_pole() {
        let p = series(-1, &[1.0, 0.0, 0.0]);
        let d = p.derivative();
        assert_eq!(d.min_order(), -2);
        assert_eq!(d.coeff(-2).unwrap(), -1.0);
    }

    #[test]
    fn coefficient_past_width_is_error() {
        let p = series(-1, &[1.0, 2.0]);
        assert_eq!(p.coeff(0).unwrap(), 2.0);
        assert_eq!(p.coeff(-5).unwrap(), 0.0);
        assert!(matches!(p.coeff(1), Err(Error::WidthExceeded { .. })));
    }

    #[test]
    fn reciprocal_rejects_zero_leading() {
        assert!(matches!(
            series(0, &[0.0, 1.0]).reciprocal(),
            Err(Error::ZeroLeadingCoefficient)
        ));
    }

    #[test]
    fn add_aligns_orders() {
        let a = series(-1, &[1.0, 2.0, 3.0]);
        let b = series(0, &[10.0, 20.0]);
        let c = &a + &b;
        assert_eq!(c.min_order(), -1);
        assert_eq!(c.coeffs(), &[1.0, 12.0, 23.0]);
    }

    #[test]
    fn powers() {
        let a = series(-1, &[1.0, 1.0, 0.0, 0.0]);
        let p = a.powi(3);
        assert_eq!(p.min_order(), -3);
        assert_eq!(p.coeffs(), &[1.0, 3.0, 3.0, 1.0]);
        assert_eq!(a.powi(0).coeffs(), TruncatedLaurentSeries::unit(4).coeffs());
    }

    proptest! {
        #[test]
        fn reciprocal_is_inverse(c in proptest::collection::vec(-3.0f64..3.0, 2..12), m in -3i32..3) {
            let mut c = c;
            c[0] = if c[0].abs() < 0.5 { 1.0 } else { c[0] };
            let a = TruncatedLaurentSeries::new(m, c.clone()).unwrap();
            let p = a.mul(&a.reciprocal().unwrap());
            prop_assert_eq!(p.min_order(), 0);
            prop_assert!((p.coeffs()[0] - 1.0).abs() < 1e-12);
            for v in &p.coeffs()[1..] {
                prop_assert!(v.abs() < 1e-9);
            }
        }

        #[test]
        fn product_prefix_is_width_independent(
            a in proptest::collection::vec(-2.0f64..2.0, 12),
            b in proptest::collection::vec(-2.0f64..2.0, 12),
            w in 1usize..12,
        ) {
            let full = series(-2, &a).mul(&series(1, &b));
            let short = series(-2, &a[..w]).mul(&series(1, &b[..w]));
            prop_assert_eq!(&full.coeffs()[..w], short.coeffs());
        }

        #[test]
        fn derivative_matches_numeric(c in proptest::collection::vec(-2.0f64..2.0, 6), m in -2i32..2) {
            let a = TruncatedLaurentSeries::new(m, c).unwrap();
            let s = 1.3;
            let h = 1e-5;
            let fd = (a.eval(s + h) - a.eval(s - h)) / (2.0 * h);
            let d = a.derivative().eval(s);
            prop_assert!((fd - d).abs() < 1e-6 * d.abs().max(1.0));
        }
    }
}
