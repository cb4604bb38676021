//! Gram points, zeros γ of Z(t), and zeros λ of Z'(t).

use std::f64::consts::PI;
use std::io::{Read, Write};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{
    hardy_z, hardy_z_jet, theta, theta_deriv, zeta, zeta_derivs, ComplexPoint, EvalAccuracy,
};

/// Bisection stops once the bracket is narrower than this.
pub const BISECTION_WIDTH: f64 = 1e-10;
/// Newton polish steps after bisection.
pub const NEWTON_STEPS: usize = 3;
/// Smallest grid step used when reconciling a Gram block.
pub const MIN_SUBDIVISION_STEP: f64 = 1e-3;
/// Grid step for the Z' scan below the first zero.
pub const SUB_GAMMA1_SCAN_STEP: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Gram,
    ZetaZero,
    ZprimeZero,
}

impl PointKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PointKind::Gram => "gram",
            PointKind::ZetaZero => "zeta_zero",
            PointKind::ZprimeZero => "zprime_zero",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "gram" => Ok(PointKind::Gram),
            "zeta_zero" => Ok(PointKind::ZetaZero),
            "zprime_zero" => Ok(PointKind::ZprimeZero),
            other => Err(Error::Config(format!("unknown point kind {other:?}"))),
        }
    }
}

/// An ordinate on the critical line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub ordinate: f64,
    pub kind: PointKind,
    /// 1-based rank within its kind.
    pub index: usize,
    /// |f| at the refined ordinate (Z for γ, Z' for λ, θ − nπ for Gram points).
    pub residual: f64,
    /// Set on the two λ below the first zero of Z.
    pub flagged: bool,
}

/// Ordered points of one kind, complete up to `t_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    pub points: Vec<CriticalPoint>,
    pub t_max: f64,
    pub kind: PointKind,
}

impl ZeroTable {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ordinates(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.ordinate).collect()
    }

    /// The sub-table of points with ordinate ≤ t, still complete up to t.
    pub fn truncated(&self, t: f64) -> ZeroTable {
        ZeroTable {
            points: self.points.iter().copied().filter(|p| p.ordinate <= t).collect(),
            t_max: t.min(self.t_max),
            kind: self.kind,
        }
    }

    /// The first `n` points; `t_max` becomes the last retained ordinate.
    pub fn first(&self, n: usize) -> ZeroTable {
        let points: Vec<_> = self.points.iter().copied().take(n).collect();
        let t_max = points.last().map_or(self.t_max, |p| p.ordinate);
        ZeroTable {
            points,
            t_max,
            kind: self.kind,
        }
    }

    /// CSV with columns `index,kind,ordinate,residual`, 15 significant digits.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["index", "kind", "ordinate", "residual"])?;
        for p in &self.points {
            out.write_record([
                p.index.to_string(),
                p.kind.as_str().to_string(),
                format_sig15(p.ordinate),
                format_sig15(p.residual),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    /// Inverse of [`ZeroTable::write_csv`]; λ with index ≤ 2 are flagged.
    pub fn read_csv<R: Read>(r: R, t_max: f64) -> Result<ZeroTable> {
        let mut rdr = csv::Reader::from_reader(r);
        let mut points = Vec::new();
        let mut kind = None;
        for rec in rdr.records() {
            let rec = rec?;
            let field = |i: usize| rec.get(i).unwrap_or_default();
            let parse = |i: usize| {
                field(i)
                    .parse::<f64>()
                    .map_err(|e| Error::Config(format!("bad number {:?}: {e}", field(i))))
            };
            let k = PointKind::parse(field(1))?;
            if *kind.get_or_insert(k) != k {
                return Err(Error::Mismatch("mixed kinds in one zero table".into()));
            }
            let index = field(0)
                .parse::<usize>()
                .map_err(|e| Error::Config(format!("bad index: {e}")))?;
            points.push(CriticalPoint {
                ordinate: parse(2)?,
                kind: k,
                index,
                residual: parse(3)?,
                flagged: k == PointKind::ZprimeZero && index <= 2,
            });
        }
        Ok(ZeroTable {
            points,
            t_max,
            kind: kind.unwrap_or(PointKind::ZetaZero),
        })
    }
}

/// Scientific notation with 15 significant digits.
pub fn format_sig15(x: f64) -> String {
    format!("{x:.14e}")
}

/// Principal branch of Lambert W on [−1/e, ∞), by Halley iteration.
fn lambert_w0(x: f64) -> f64 {
    let mut w = if x < 0.0 {
        let p = (2.0 * (std::f64::consts::E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0
    } else {
        (1.0 + x).ln()
    };
    for _ in 0..50 {
        let ew = w.exp();
        let f = w * ew - x;
        let d = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        let step = f / d;
        w -= step;
        if step.abs() <= 1e-15 * w.abs().max(1.0) {
            break;
        }
    }
    w
}

/// g_n with θ(g_n) = nπ, for n ≥ −1.
fn gram_point_signed(n: i64) -> Result<f64> {
    let target = n as f64 * PI;
    let a = n as f64 + 0.125;
    let mut t = 2.0 * PI * a / lambert_w0(a / std::f64::consts::E);
    if !t.is_finite() || t < 9.0 {
        t = 10.0;
    }
    for _ in 0..50 {
        let step = (theta(t)? - target) / theta_deriv(t)?;
        t -= step;
        if t < 1.0 {
            t = 1.0 + 0.5 * (t + step - 1.0);
        }
        if step.abs() <= 4.0 * f64::EPSILON * t {
            return Ok(t);
        }
    }
    let r = (theta(t)? - target).abs();
    if r <= 1e-10 {
        Ok(t)
    } else {
        Err(Error::NonConvergence(format!("gram point {n}: residual {r:e}")))
    }
}

/// The n-th Gram point g_n, θ(g_n) = nπ.
pub fn gram_point(n: u64) -> Result<f64> {
    gram_point_signed(n as i64)
}

/// Continuous variation of arg ζ(σ + iT) from σ = 3 down to σ = 1/2, divided by π.
pub fn s_of_t(t: f64, acc: EvalAccuracy) -> Result<f64> {
    let at = |sigma: f64| zeta(ComplexPoint::new(sigma, t), acc);
    let mut sigma = 3.0;
    let mut cur = at(sigma)?;
    let mut arg = cur.arg();
    let mut h: f64 = 0.25;
    while sigma > 0.5 {
        let step = h.min(sigma - 0.5);
        let next_sigma = if step == sigma - 0.5 { 0.5 } else { sigma - step };
        let next = at(next_sigma)?;
        let delta = (next / cur).arg();
        if delta.abs() > PI / 4.0 || next.norm() == 0.0 {
            h *= 0.5;
            if h < 1e-9 {
                return Err(Error::NonConvergence(format!(
                    "argument tracking at T = {t} stalled near sigma = {sigma}"
                )));
            }
            continue;
        }
        arg += delta;
        cur = next;
        sigma = next_sigma;
        h = (h * 1.5).min(0.25);
    }
    Ok(arg / PI)
}

/// N(T) = θ(T)/π + 1 + S(T), rounded; also returns the unrounded value.
pub fn zero_count(t: f64, acc: EvalAccuracy) -> Result<(usize, f64)> {
    let raw = theta(t)? / PI + 1.0 + s_of_t(t, acc)?;
    let n = raw.round();
    if (raw - n).abs() > 0.25 || n < 0.0 {
        return Err(Error::NonConvergence(format!(
            "N({t}) = {raw} is not close to an integer"
        )));
    }
    Ok((n as usize, raw))
}

fn sign_changes(values: &[f64]) -> usize {
    values.windows(2).filter(|w| w[0] * w[1] < 0.0).count()
}

/// Refine a sign change of `f` on [lo, hi] by bisection, then guarded Newton.
fn refine<F, G>(f: F, fd: G, mut lo: f64, mut hi: f64, mut flo: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
    G: Fn(f64) -> Result<(f64, f64)>,
{
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let (blo, bhi) = (lo, hi);
    let mut t = 0.5 * (lo + hi);
    for _ in 0..NEWTON_STEPS {
        let (v, d) = fd(t)?;
        if d == 0.0 {
            break;
        }
        let next = t - v / d;
        if !(next >= blo && next <= bhi) {
            break;
        }
        t = next;
    }
    let r = f(t)?.abs();
    Ok((t, r))
}

fn refine_zeta_zero(lo: f64, hi: f64, flo: f64, acc: EvalAccuracy) -> Result<(f64, f64)> {
    refine(
        |t| hardy_z(t, acc),
        |t| {
            let [z, d, _] = hardy_z_jet(t, acc)?;
            Ok((z, d))
        },
        lo,
        hi,
        flo,
    )
}

fn refine_zprime_zero(lo: f64, hi: f64, flo: f64, acc: EvalAccuracy) -> Result<(f64, f64)> {
    refine(
        |t| z_prime(t, acc),
        |t| {
            let [_, d, d2] = hardy_z_jet(t, acc)?;
            Ok((d, d2))
        },
        lo,
        hi,
        flo,
    )
}

fn z_prime(t: f64, acc: EvalAccuracy) -> Result<f64> {
    crate::special::hardy_z_deriv(t, acc)
}

/// Sign-change brackets of Z on [a, b] whose count equals `expected`,
/// subdividing the grid by 10 until it does.
fn bracket_block(
    grid: Vec<f64>,
    values: Vec<f64>,
    expected: usize,
    acc: EvalAccuracy,
) -> Result<Vec<(f64, f64, f64)>> {
    let (a, b) = (grid[0], *grid.last().expect("nonempty grid"));
    let mut grid = grid;
    let mut values = values;
    loop {
        let found = sign_changes(&values);
        if found == expected {
            return Ok(grid
                .windows(2)
                .zip(values.windows(2))
                .filter(|(_, v)| v[0] * v[1] < 0.0)
                .map(|(g, v)| (g[0], g[1], v[0]))
                .collect());
        }
        let step = grid.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
        if step / 10.0 < MIN_SUBDIVISION_STEP || found > expected {
            return Err(Error::UnresolvedCount {
                lo: a,
                hi: b,
                expected,
                found,
            });
        }
        let mut ng = Vec::with_capacity(grid.len() * 10);
        let mut nv = Vec::with_capacity(grid.len() * 10);
        for i in 0..grid.len() - 1 {
            ng.push(grid[i]);
            nv.push(values[i]);
            for k in 1..10 {
                let t = grid[i] + (grid[i + 1] - grid[i]) * k as f64 / 10.0;
                ng.push(t);
                nv.push(hardy_z(t, acc)?);
            }
        }
        ng.push(*grid.last().unwrap());
        nv.push(*values.last().unwrap());
        grid = ng;
        values = nv;
    }
}

/// All zeros γ of Z with 0 < γ ≤ t_max, refined and verified against N(t_max).
pub fn find_zeta_zeros(t_max: f64, acc: EvalAccuracy) -> Result<ZeroTable> {
    if !(t_max >= 15.0) || !t_max.is_finite() {
        return Err(Error::domain(format!("find_zeta_zeros requires t_max >= 15, got {t_max}")));
    }
    let n_max = (theta(t_max)? / PI).floor() as i64;
    let grams: Vec<f64> = (-1..=n_max)
        .into_par_iter()
        .map(gram_point_signed)
        .collect::<Result<_>>()?;
    let zs: Vec<f64> = grams
        .par_iter()
        .map(|&g| hardy_z(g, acc))
        .collect::<Result<_>>()?;

    // Good Gram points: (−1)^n Z(g_n) > 0, with n = index − 1.
    let good: Vec<usize> = (0..grams.len())
        .filter(|&i| {
            let sign = if (i as i64 - 1).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            sign * zs[i] > 0.0
        })
        .collect();
    if good.first() != Some(&0) {
        return Err(Error::NonConvergence("g_{-1} is not a good Gram point".into()));
    }
    let last_good = *good.last().unwrap();

    let (total, _) = zero_count(t_max, acc)?;
    // Zeros below g_{-1} ≈ 9.67: none.
    let blocks: Vec<(usize, usize)> = good.windows(2).map(|w| (w[0], w[1])).collect();
    let block_brackets: Vec<Vec<(f64, f64, f64)>> = blocks
        .par_iter()
        .map(|&(a, b)| {
            bracket_block(grams[a..=b].to_vec(), zs[a..=b].to_vec(), b - a, acc)
        })
        .collect::<Result<_>>()?;

    let in_blocks = last_good;
    if total < in_blocks {
        return Err(Error::UnresolvedCount {
            lo: grams[last_good],
            hi: t_max,
            expected: total,
            found: in_blocks,
        });
    }
    let mut tail_grid: Vec<f64> = grams[last_good..].to_vec();
    let mut tail_vals: Vec<f64> = zs[last_good..].to_vec();
    if *tail_grid.last().unwrap() < t_max {
        tail_grid.push(t_max);
        tail_vals.push(hardy_z(t_max, acc)?);
    }
    let tail = if tail_grid.len() > 1 {
        bracket_block(tail_grid, tail_vals, total - in_blocks, acc)?
    } else {
        Vec::new()
    };

    let brackets: Vec<(f64, f64, f64)> = block_brackets.into_iter().flatten().chain(tail).collect();
    let refined: Vec<(f64, f64)> = brackets
        .par_iter()
        .map(|&(lo, hi, flo)| refine_zeta_zero(lo, hi, flo, acc))
        .collect::<Result<_>>()?;
    let points = refined
        .into_iter()
        .enumerate()
        .map(|(i, (t, r))| CriticalPoint {
            ordinate: t,
            kind: PointKind::ZetaZero,
            index: i + 1,
            residual: r,
            flagged: false,
        })
        .collect();
    Ok(ZeroTable {
        points,
        t_max,
        kind: PointKind::ZetaZero,
    })
}

/// Z(t)·Z'(t) < 0: |Z| is past its last extremum before t.
fn past_extremum(t: f64, acc: EvalAccuracy) -> Result<bool> {
    let [z, d, _] = hardy_z_jet(t, acc)?;
    Ok(z * d < 0.0)
}

/// Zeros λ of Z'(t) with 1 ≤ λ ≤ t_max: the two below γ₁ (flagged), one in each
/// (γ_i, γ_{i+1}), and one above the last γ when |Z| has already turned.
pub fn find_zprime_zeros(zeta_zeros: &ZeroTable, acc: EvalAccuracy) -> Result<ZeroTable> {
    if zeta_zeros.kind != PointKind::ZetaZero {
        return Err(Error::Mismatch("find_zprime_zeros needs a zeta_zero table".into()));
    }
    let gammas = zeta_zeros.ordinates();
    let t_max = zeta_zeros.t_max;
    let first = *gammas
        .first()
        .ok_or_else(|| Error::domain("zero table is empty"))?;

    // Scan below γ₁.
    let steps = ((first - 1.0) / SUB_GAMMA1_SCAN_STEP).floor() as usize;
    let mut grid: Vec<f64> = (0..=steps).map(|i| 1.0 + i as f64 * SUB_GAMMA1_SCAN_STEP).collect();
    grid.push(first);
    let vals: Vec<f64> = grid.iter().map(|&t| z_prime(t, acc)).collect::<Result<_>>()?;
    let mut brackets: Vec<(f64, f64, f64, bool)> = grid
        .windows(2)
        .zip(vals.windows(2))
        .filter(|(_, v)| v[0] * v[1] < 0.0)
        .map(|(g, v)| (g[0], g[1], v[0], true))
        .collect();

    let dz: Vec<f64> = gammas.par_iter().map(|&g| z_prime(g, acc)).collect::<Result<_>>()?;
    for i in 0..gammas.len().saturating_sub(1) {
        if dz[i] * dz[i + 1] >= 0.0 {
            return Err(Error::BracketFailure {
                function: "Z'",
                lo: gammas[i],
                hi: gammas[i + 1],
            });
        }
        brackets.push((gammas[i], gammas[i + 1], dz[i], false));
    }
    let last = *gammas.last().unwrap();
    if t_max > last && past_extremum(t_max, acc)? {
        let end = z_prime(t_max, acc)?;
        let start = *dz.last().unwrap();
        if start * end >= 0.0 {
            return Err(Error::BracketFailure {
                function: "Z'",
                lo: last,
                hi: t_max,
            });
        }
        brackets.push((last, t_max, start, false));
    }

    let refined: Vec<(f64, f64)> = brackets
        .par_iter()
        .map(|&(lo, hi, flo, _)| refine_zprime_zero(lo, hi, flo, acc))
        .collect::<Result<_>>()?;
    let points = refined
        .into_iter()
        .zip(brackets.iter())
        .enumerate()
        .map(|(i, ((t, r), b))| CriticalPoint {
            ordinate: t,
            kind: PointKind::ZprimeZero,
            index: i + 1,
            residual: r,
            flagged: b.3,
        })
        .collect();
    Ok(ZeroTable {
        points,
        t_max,
        kind: PointKind::ZprimeZero,
    })
}

/// Count reconciliation for a zero table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub kind: PointKind,
    pub t_max: f64,
    /// round(θ/π + 1 + S(T)).
    pub expected_from_theta: usize,
    /// ⌊θ/π⌋ + 1, reported for comparison; it can be off by one.
    pub naive_from_theta: i64,
    pub found: usize,
    pub delta: i64,
    pub bookkeeping: String,
}

/// Compare the size of a table with the count implied by θ and S(T).
pub fn verify_counts(table: &ZeroTable, acc: EvalAccuracy) -> Result<CountReport> {
    let t = table.t_max;
    let naive = (theta(t)? / PI).floor() as i64 + 1;
    let (n_zeta, raw) = zero_count(t, acc)?;
    let found = table.len();
    let (expected, bookkeeping) = match table.kind {
        PointKind::ZetaZero => (n_zeta, format!("N(T) = {raw:.6} from theta/pi + 1 + S(T)")),
        PointKind::Gram => {
            let n = (naive + 1).max(0) as usize;
            (n, "Gram points g_0..g_n with g_n <= T".to_string())
        }
        PointKind::ZprimeZero => {
            let below: usize = [2.475_726_622_637_56, 10.212_074_845_235_794]
                .iter()
                .filter(|&&l| l <= t)
                .count();
            let between = n_zeta.saturating_sub(1);
            let tail = usize::from(n_zeta > 0 && past_extremum(t, acc)?);
            (
                below + between + tail,
                format!(
                    "{below} below gamma_1 + {between} between consecutive zeros + {tail} above the last zero (N(T) = {n_zeta})"
                ),
            )
        }
    };
    Ok(CountReport {
        kind: table.kind,
        t_max: t,
        expected_from_theta: expected,
        naive_from_theta: naive,
        found,
        delta: found as i64 - expected as i64,
        bookkeeping,
    })
}

/// ζ⁽ʲ⁾(1/2 + it) for j ≤ n; shorthand used by the sum accumulators.
pub fn critical_derivs(t: f64, n: usize, acc: EvalAccuracy) -> Result<Vec<Complex64>> {
    Ok(zeta_derivs(ComplexPoint::critical(t), n, acc)?.values)
}
