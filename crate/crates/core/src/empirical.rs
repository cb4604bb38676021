//! Running sums over γ and λ, and their comparison with predicted expansions.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{evaluate_prediction, CoefficientTable, Engine, Theorem};
use crate::error::{Error, Result};
use crate::special::{chi, hardy_z, zeta_derivs, ComplexPoint, EvalAccuracy};
use crate::summation::{ComplexSum, NeumaierSum};
use crate::zeros::{format_sig15, PointKind, ZeroTable};

/// Envelope on |empirical + T/2π| for χ over γ, as a multiple of T^0.55.
pub const CHI_GAMMA_ENVELOPE: f64 = 5.0;
/// Accepted band for the Z² ratio against the two-term prediction.
pub const Z_SQUARED_BAND: (f64, f64) = (0.8, 1.2);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    /// ζ⁽ⁿ⁾(1/2+iλ).
    ZetaDerivN(usize),
    /// ζ(1/2+iλ).
    Zeta,
    /// χ(1/2+iλ).
    ChiAtLambda,
    /// χ(1/2+iγ).
    ChiAtGamma,
    /// Z(λ)².
    ZSquared,
}

impl Observable {
    pub fn label(self) -> String {
        match self {
            Observable::ZetaDerivN(n) => format!("zeta_deriv_n({n})"),
            Observable::Zeta => "zeta".into(),
            Observable::ChiAtLambda => "chi_at_lambda".into(),
            Observable::ChiAtGamma => "chi_at_gamma".into(),
            Observable::ZSquared => "z_squared".into(),
        }
    }

    pub fn point_kind(self) -> PointKind {
        match self {
            Observable::ChiAtGamma => PointKind::ZetaZero,
            _ => PointKind::ZprimeZero,
        }
    }

    pub fn value_at(self, t: f64, acc: EvalAccuracy) -> Result<Complex64> {
        let s = ComplexPoint::critical(t);
        match self {
            Observable::ZetaDerivN(n) => Ok(zeta_derivs(s, n, acc)?.values[n]),
            Observable::Zeta => Ok(zeta_derivs(s, 0, acc)?.values[0]),
            Observable::ChiAtLambda | Observable::ChiAtGamma => chi(s),
            Observable::ZSquared => Ok(Complex64::new(hardy_z(t, acc)?.powi(2), 0.0)),
        }
    }

    /// Whether a table predicts this observable.
    pub fn matches(self, table: &CoefficientTable) -> bool {
        match (self, table.theorem) {
            (Observable::ZetaDerivN(n), Theorem::Thm1 | Theorem::Corollary) => n == table.n,
            (Observable::Zeta, Theorem::Thm2)
            | (Observable::ChiAtLambda, Theorem::Thm3)
            | (Observable::ChiAtGamma, Theorem::Thm4)
            | (Observable::ZSquared, Theorem::Hlpc2) => true,
            _ => false,
        }
    }

    /// The default prediction table.
    pub fn default_table(self, engine: &Engine, depth: usize) -> Result<CoefficientTable> {
        match self {
            Observable::ZetaDerivN(1) => engine.corollary(depth.max(1)),
            Observable::ZetaDerivN(n) => engine.thm1(n, depth.max(1)),
            Observable::Zeta => engine.thm2(depth),
            Observable::ChiAtLambda => engine.thm3(depth.max(1)),
            Observable::ChiAtGamma => Ok(engine.thm4()),
            Observable::ZSquared => Ok(engine.hlpc2()),
        }
    }

    /// Bound on |Im| of the final partial sum over the first 10⁴ λ.
    pub fn im_envelope(self) -> Option<f64> {
        match self {
            Observable::ZetaDerivN(1) | Observable::ChiAtLambda => Some(20.0),
            Observable::Zeta => Some(40.0),
            _ => None,
        }
    }

    /// How many prediction depths must show strictly shrinking residuals.
    pub fn nested_depths(self) -> usize {
        match self {
            Observable::ZetaDerivN(1) => 3,
            Observable::Zeta | Observable::ChiAtLambda => 2,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SumPoint {
    pub ordinate: f64,
    pub partial_re: f64,
    pub partial_im: f64,
}

impl SumPoint {
    pub fn partial(&self) -> Complex64 {
        Complex64::new(self.partial_re, self.partial_im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunningSum {
    pub observable: Observable,
    pub points: Vec<SumPoint>,
}

impl RunningSum {
    pub fn last(&self) -> Option<&SumPoint> {
        self.points.last()
    }

    /// CSV `ordinate,partial_re,partial_im` every `stride` points, always keeping the last.
    pub fn write_csv<W: Write>(&self, w: W, stride: usize) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["ordinate", "partial_re", "partial_im"])?;
        for i in strided(self.points.len(), stride) {
            let p = &self.points[i];
            out.write_record([
                format_sig15(p.ordinate),
                format_sig15(p.partial_re),
                format_sig15(p.partial_im),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

fn strided(len: usize, stride: usize) -> impl Iterator<Item = usize> {
    let stride = stride.max(1);
    (0..len).filter(move |i| i % stride == stride - 1 || *i + 1 == len)
}

/// Per-point values in parallel, then one sequential compensated prefix pass.
pub fn accumulate(
    observable: Observable,
    table: &ZeroTable,
    acc: EvalAccuracy,
    include_sub_gamma1: bool,
) -> Result<RunningSum> {
    if table.kind != observable.point_kind() {
        return Err(Error::Mismatch(format!(
            "{} needs a {} table, got {}",
            observable.label(),
            observable.point_kind().as_str(),
            table.kind.as_str()
        )));
    }
    let ordinates: Vec<f64> = table
        .points
        .iter()
        .filter(|p| include_sub_gamma1 || !p.flagged)
        .map(|p| p.ordinate)
        .collect();
    let values: Vec<Complex64> = ordinates
        .par_iter()
        .map(|&t| observable.value_at(t, acc))
        .collect::<Result<_>>()?;
    let mut sum = ComplexSum::new();
    let points = ordinates
        .iter()
        .zip(values)
        .map(|(&t, v)| {
            sum.add(v);
            let p = sum.value();
            SumPoint {
                ordinate: t,
                partial_re: p.re,
                partial_im: p.im,
            }
        })
        .collect();
    Ok(RunningSum { observable, points })
}

/// `predictions[d][i]` is the (d+1)-term prediction at `t_grid[i]`;
/// residuals are taken on the real part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub observable: Observable,
    pub table: CoefficientTable,
    pub t_grid: Vec<f64>,
    pub empirical: Vec<Complex64>,
    pub predictions: Vec<Vec<f64>>,
    pub residuals: Vec<Vec<f64>>,
    /// Mean |residual| over the grid, one entry per depth.
    pub avg_abs_residual: Vec<f64>,
}

impl ComparisonReport {
    pub fn depth(&self) -> usize {
        self.predictions.len()
    }

    /// Residual sequence after `d` terms; d = 0 is the empirical real part.
    pub fn residual(&self, d: usize) -> Vec<f64> {
        if d == 0 {
            self.empirical.iter().map(|z| z.re).collect()
        } else {
            self.residuals[d - 1].clone()
        }
    }

    /// CSV `ordinate,partial_re,partial_im,pred_1..,resid_1..`.
    pub fn write_csv<W: Write>(&self, w: W, stride: usize) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let d = self.depth();
        let mut header = vec!["ordinate".to_string(), "partial_re".into(), "partial_im".into()];
        header.extend((1..=d).map(|k| format!("pred_{k}")));
        header.extend((1..=d).map(|k| format!("resid_{k}")));
        out.write_record(&header)?;
        for i in strided(self.t_grid.len(), stride) {
            let mut row = vec![
                format_sig15(self.t_grid[i]),
                format_sig15(self.empirical[i].re),
                format_sig15(self.empirical[i].im),
            ];
            row.extend(self.predictions.iter().map(|p| format_sig15(p[i])));
            row.extend(self.residuals.iter().map(|r| format_sig15(r[i])));
            out.write_record(&row)?;
        }
        out.flush()?;
        Ok(())
    }
}

pub fn compare(sum: &RunningSum, table: &CoefficientTable) -> Result<ComparisonReport> {
    if !sum.observable.matches(table) {
        return Err(Error::Mismatch(format!(
            "{} cannot be compared with a {} table",
            sum.observable.label(),
            table.theorem.as_str()
        )));
    }
    let depth = table.positive.len() + table.negative.len();
    let t_grid: Vec<f64> = sum.points.iter().map(|p| p.ordinate).collect();
    let empirical: Vec<Complex64> = sum.points.iter().map(SumPoint::partial).collect();
    let mut predictions = vec![Vec::with_capacity(t_grid.len()); depth];
    for &t in &t_grid {
        let p = evaluate_prediction(table, t)?;
        let mut run = NeumaierSum::new();
        for (d, term) in p.per_term.iter().enumerate() {
            run.add(*term);
            predictions[d].push(run.value());
        }
    }
    let residuals: Vec<Vec<f64>> = predictions
        .iter()
        .map(|pred| empirical.iter().zip(pred).map(|(e, p)| e.re - p).collect())
        .collect();
    let avg_abs_residual = residuals
        .iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>() / r.len().max(1) as f64)
        .collect();
    Ok(ComparisonReport {
        observable: sum.observable,
        table: table.clone(),
        t_grid,
        empirical,
        predictions,
        residuals,
        avg_abs_residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeCheck {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
    /// Soft checks are reported but never fail a run.
    pub hard: bool,
}

/// Every envelope that applies to the report's observable.
pub fn envelope_checks(report: &ComparisonReport) -> Vec<EnvelopeCheck> {
    let mut out = Vec::new();
    let obs = report.observable;
    if let (Some(bound), Some(last)) = (obs.im_envelope(), report.empirical.last()) {
        out.push(EnvelopeCheck {
            name: format!("{}: |Im final|", obs.label()),
            value: last.im.abs(),
            bound,
            pass: last.im.abs() <= bound,
            hard: true,
        });
    }
    let nested = obs.nested_depths().min(report.depth());
    for d in 1..nested {
        let (a, b) = (report.avg_abs_residual[d - 1], report.avg_abs_residual[d]);
        out.push(EnvelopeCheck {
            name: format!("{}: mean |residual| after {} terms < after {}", obs.label(), d + 1, d),
            value: b,
            bound: a,
            pass: b < a,
            hard: true,
        });
    }
    if obs == Observable::ChiAtGamma {
        let worst = report
            .t_grid
            .iter()
            .zip(&report.empirical)
            .map(|(&t, e)| (e + t / (2.0 * PI)).norm() / t.powf(0.55))
            .fold(0.0, f64::max);
        out.push(EnvelopeCheck {
            name: "chi_at_gamma: max |sum + T/2π| / T^0.55".into(),
            value: worst,
            bound: CHI_GAMMA_ENVELOPE,
            pass: worst <= CHI_GAMMA_ENVELOPE,
            hard: true,
        });
    }
    if obs == Observable::ZSquared {
        if let (Some(&t), Some(e)) = (report.t_grid.last(), report.empirical.last()) {
            let r = second_moment_ratio(t, e.re);
            out.push(EnvelopeCheck {
                name: "z_squared: ratio to two-term prediction".into(),
                value: r,
                bound: Z_SQUARED_BAND.1,
                pass: (Z_SQUARED_BAND.0..=Z_SQUARED_BAND.1).contains(&r),
                hard: false,
            });
        }
    }
    out
}

fn second_moment_ratio(t: f64, empirical: f64) -> f64 {
    let two = evaluate_prediction(&Engine::default().hlpc2(), t).map_or(f64::NAN, |p| p.value);
    empirical / two
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecondMomentReport {
    #[serde(rename = "T")]
    pub t: f64,
    pub empirical: f64,
    /// (e²−5)/(4π) T (log T)².
    pub one_term: f64,
    pub two_term: f64,
    pub ratio_one_term: f64,
    pub ratio_two_term: f64,
    pub increasing: bool,
    pub within_band: bool,
}

pub fn second_moment_check(sum: &RunningSum) -> Result<SecondMomentReport> {
    if sum.observable != Observable::ZSquared {
        return Err(Error::Mismatch("second moment check needs a z_squared sum".into()));
    }
    let last = sum
        .last()
        .ok_or_else(|| Error::domain("second moment check needs at least one point"))?;
    let t = last.ordinate;
    let e2 = 2f64.exp();
    let one_term = (e2 - 5.0) / (4.0 * PI) * t * t.ln().powi(2);
    let two_term = evaluate_prediction(&Engine::default().hlpc2(), t)?.value;
    let ratio_two_term = last.partial_re / two_term;
    Ok(SecondMomentReport {
        t,
        empirical: last.partial_re,
        one_term,
        two_term,
        ratio_one_term: last.partial_re / one_term,
        ratio_two_term,
        increasing: sum.points.windows(2).all(|w| w[1].partial_re >= w[0].partial_re),
        within_band: (Z_SQUARED_BAND.0..=Z_SQUARED_BAND.1).contains(&ratio_two_term),
    })
}

/// Final values and every envelope check, for JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonSummary {
    pub observable: Observable,
    pub points: usize,
    pub final_ordinate: f64,
    pub final_re: f64,
    pub final_im: f64,
    pub avg_abs_residual: Vec<f64>,
    pub checks: Vec<EnvelopeCheck>,
    pub hard_pass: bool,
}

impl ComparisonSummary {
    pub fn from_report(report: &ComparisonReport) -> Self {
        let checks = envelope_checks(report);
        let last = report.empirical.last().copied().unwrap_or_default();
        Self {
            observable: report.observable,
            points: report.t_grid.len(),
            final_ordinate: report.t_grid.last().copied().unwrap_or(0.0),
            final_re: last.re,
            final_im: last.im,
            avg_abs_residual: report.avg_abs_residual.clone(),
            hard_pass: checks.iter().all(|c| c.pass || !c.hard),
            checks,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::{find_zeta_zeros, find_zprime_zeros};
    use std::sync::OnceLock;

    fn tables() -> &'static (ZeroTable, ZeroTable) {
        static T: OnceLock<(ZeroTable, ZeroTable)> = OnceLock::new();
        T.get_or_init(|| {
            let acc = EvalAccuracy::default();
            let g = find_zeta_zeros(300.0, acc).unwrap();
            let l = find_zprime_zeros(&g, acc).unwrap();
            (g, l)
        })
    }

    #[test]
    fn chi_at_gamma_is_unimodular_sum() {
        let (g, _) = tables();
        let s = accumulate(Observable::ChiAtGamma, &g.first(100), EvalAccuracy::default(), false).unwrap();
        assert_eq!(s.points.len(), 100);
        for (i, p) in s.points.iter().enumerate() {
            assert!(p.partial().norm() <= (i + 1) as f64 + 1e-9);
        }
    }

    #[test]
    fn z_squared_entries_nonnegative_and_increasing() {
        let (_, l) = tables();
        let s = accumulate(Observable::ZSquared, l, EvalAccuracy::default(), false).unwrap();
        assert!(s.points.iter().all(|p| p.partial_im == 0.0));
        assert!(s.points.windows(2).all(|w| w[1].partial_re >= w[0].partial_re));
        let r = second_moment_check(&s).unwrap();
        assert!(r.increasing);
        assert!(r.ratio_two_term.is_finite());
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let (g, l) = tables();
        assert!(accumulate(Observable::Zeta, g, EvalAccuracy::default(), false).is_err());
        assert!(accumulate(Observable::ChiAtGamma, l, EvalAccuracy::default(), false).is_err());
    }

    #[test]
    fn sub_gamma1_flag() {
        let (_, l) = tables();
        let acc = EvalAccuracy::default();
        let with = accumulate(Observable::Zeta, l, acc, true).unwrap();
        let without = accumulate(Observable::Zeta, l, acc, false).unwrap();
        assert_eq!(with.points.len(), without.points.len() + 2);
    }

    #[test]
    fn prefix_property() {
        let (_, l) = tables();
        let acc = EvalAccuracy::default();
        let full = accumulate(Observable::ZetaDerivN(1), l, acc, false).unwrap();
        let n = l.len();
        let cut = accumulate(Observable::ZetaDerivN(1), &l.first(n - 1), acc, false).unwrap();
        assert_eq!(&full.points[..full.points.len() - 1], &cut.points[..]);
    }

    #[test]
    fn compare_shapes_and_mismatch() {
        let (g, l) = tables();
        let acc = EvalAccuracy::default();
        let e = Engine::default();
        let s = accumulate(Observable::ChiAtGamma, g, acc, false).unwrap();
        let r = compare(&s, &e.thm4()).unwrap();
        assert_eq!(r.depth(), 1);
        for (i, t) in r.t_grid.iter().enumerate() {
            assert!((r.residuals[0][i] - (r.empirical[i].re + t / (2.0 * PI))).abs() < 1e-9);
        }
        assert_eq!(r.residual(0)[3], r.empirical[3].re);
        assert!(compare(&s, &e.thm2(1).unwrap()).is_err());
        let z = accumulate(Observable::Zeta, l, acc, false).unwrap();
        let r = compare(&z, &e.thm2(2).unwrap()).unwrap();
        assert_eq!(r.depth(), 4);
        let mut buf = Vec::new();
        r.write_csv(&mut buf, 10).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("ordinate,partial_re,partial_im,pred_1,pred_2,pred_3,pred_4,resid_1"));
    }

    #[test]
    fn parallel_determinism() {
        let (_, l) = tables();
        let acc = EvalAccuracy::default();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let a = pool.install(|| accumulate(Observable::Zeta, l, acc, false).unwrap());
        let b = accumulate(Observable::Zeta, l, acc, false).unwrap();
        assert_eq!(a, b);
    }
}
