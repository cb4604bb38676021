//! Acceptance run: one PASS/FAIL line per criterion item.
//!
//! Items listed in `KNOWN_FAILURES` are printed as FAIL when they fail but do
//! not fail the run; the analysis for each is in the decisions ledger. Any other
//! failure exits nonzero.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;
use zext_core::arith::{brute_sum_a, brute_sum_psi_n, SumDefinition};
use zext_core::asymptotics::printed::{self, incomplete_gamma_direct, thm1_leading};
use zext_core::asymptotics::{incomplete_gamma_sum, Engine};
use zext_core::empirical::{accumulate, compare, envelope_checks, second_moment_check};
use zext_core::series::{c_family, eval_residue_polynomial, residue_polynomial};
use zext_core::special::{chi, hardy_z_deriv, hardy_z_with_residue, z1, z1_log_deriv, zeta};
use zext_core::zeros::{find_zeta_zeros, find_zprime_zeros, verify_counts};
use zext_core::{CoefficientTable, ComplexPoint, EvalAccuracy, FamilyKind, Observable, ZeroTable};

const KNOWN_FAILURES: &[&str] = &["1c", "2a"];

const TOL_CLOSED_FORM: f64 = 1e-10;
const TOL_INCOMPLETE_GAMMA: f64 = 1e-12;
const TOL_GOLDEN: f64 = 1e-12;
const ORACLE_ENVELOPE: f64 = 5.0;
const TOL_FE: f64 = 1e-8;
const TOL_CHI_MODULUS: f64 = 1e-10;
const TOL_Z_REAL: f64 = 1e-9;
const TOL_CG1: f64 = 1e-9;
const TOL_CG2: f64 = 1e-8;
const TOL_TRUNCATION: f64 = 1e-12;
const DESK_ZEROS: usize = 10_000;

struct Report {
    unexpected: Vec<String>,
    known: Vec<String>,
}

impl Report {
    fn line(&mut self, id: &str, pass: bool, what: &str, detail: String, started: Instant) {
        let tag = if pass { "PASS" } else { "FAIL" };
        let known = !pass && KNOWN_FAILURES.contains(&id);
        let note = if known { " [known, see ledger]" } else { "" };
        println!("{tag} {id:<3} {what}: {detail} ({:.1}s){note}", started.elapsed().as_secs_f64());
        if !pass {
            if known {
                self.known.push(id.into());
            } else {
                self.unexpected.push(id.into());
            }
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn criterion_1(r: &mut Report, engine: &Engine) {
    let g0 = engine.stieltjes().gamma(0);
    let g1 = engine.stieltjes().gamma(1);

    let t = Instant::now();
    let worst = (1..=8)
        .map(|n| rel(engine.thm1(n, 1).unwrap().positive[0], thm1_leading(n)))
        .fold(0.0, f64::max);
    r.line("1a", worst <= TOL_CLOSED_FORM, "Theorem 1 leading a_{n+1}, n = 1..8", format!("max rel {worst:.1e}"), t);

    let t = Instant::now();
    let cor = engine.corollary(3).unwrap();
    let printed = printed::corollary(g0, g1);
    let d2 = rel(cor.coefficient(2), printed[0]);
    let d1 = rel(cor.coefficient(1), printed[1]);
    r.line("1b", d2.max(d1) <= TOL_CLOSED_FORM, "Corollary L^2, L^1", format!("max rel {:.1e}", d2.max(d1)), t);
    let t = Instant::now();
    let d0 = rel(cor.coefficient(0), printed[2]);
    r.line(
        "1c",
        d0 <= TOL_CLOSED_FORM,
        "Corollary L^0 as printed",
        format!("engine {:.6} vs printed {:.6}", cor.coefficient(0), printed[2]),
        t,
    );

    let t = Instant::now();
    let t2 = engine.thm2(3).unwrap();
    let p2 = printed::thm2(g0);
    let d = rel(t2.coefficient(1), p2[0]).max(rel(t2.coefficient(0), p2[1]));
    r.line("1d", d <= TOL_CLOSED_FORM, "Theorem 2 L^1, L^0", format!("max rel {d:.1e}"), t);

    let t = Instant::now();
    let t3 = engine.thm3(3).unwrap();
    let p3 = printed::thm3(g0);
    let d = rel(t3.coefficient(0), p3[0]).max(rel(t3.coefficient(-1), p3[1]));
    r.line("1e", d <= TOL_CLOSED_FORM, "Theorem 3 L^0, L^-1", format!("max rel {d:.1e}"), t);

    let t = Instant::now();
    let d = (0..=10)
        .map(|n| (incomplete_gamma_sum(n) - incomplete_gamma_direct(n, 80)).abs())
        .fold(0.0, f64::max);
    r.line("1f", d <= TOL_INCOMPLETE_GAMMA, "incomplete-gamma identity, n = 0..10", format!("max abs {d:.1e}"), t);

    let t = Instant::now();
    let table = engine.stieltjes();
    let mut worst: f64 = 0.0;
    for k in 1..=8 {
        let kf = k as f64;
        for j in 0..=6 {
            let f = c_family(FamilyKind::CKj, k, j, 2, table).unwrap();
            let c0 = if j % 2 == 0 { 1.0 } else { -1.0 } * factorial(j);
            let c1 = if j == 0 { -1.0 + g0 + (1.0 - kf) * g0 } else { c0 * (-1.0 + (1.0 - kf) * g0) };
            worst = worst.max(rel(f.values[0], c0)).max(rel(f.values[1], c1));
        }
        let c2 = c_family(FamilyKind::CK2, k, 0, 2, table).unwrap();
        let c3 = c_family(FamilyKind::CK3, k, 0, 2, table).unwrap();
        worst = worst
            .max(rel(c2.values[1], -1.0 + g0 + (1.0 - kf) * g0))
            .max(rel(c3.values[1], -1.0 + g0 - kf * g0));
    }
    r.line("1g", worst <= TOL_GOLDEN, "c_0 and c_1 goldens, k <= 8, j <= 6", format!("max rel {worst:.1e}"), t);
}

fn criterion_2(r: &mut Report, engine: &Engine) {
    let t = Instant::now();
    let xs = [1e4, 1e5, 1e6];
    let mut cases = Vec::new();
    for k in 1..=3 {
        for j in 0..=2 {
            cases.push((SumDefinition::AKj, FamilyKind::CKj, k, j));
        }
        cases.push((SumDefinition::AK2, FamilyKind::CK2, k, 0));
        cases.push((SumDefinition::AK3, FamilyKind::CK3, k, 0));
    }
    let ratios: Vec<[f64; 3]> = cases
        .par_iter()
        .map(|&(def, kind, k, j)| {
            let b = residue_polynomial(kind, k, j, engine.stieltjes()).unwrap();
            let d = kind.degree(k, j);
            xs.map(|x| {
                let brute = brute_sum_a(def, k, j, x).unwrap().value;
                (brute - eval_residue_polynomial(&b, d, x)).abs() / x.powf(0.6)
            })
        })
        .collect();
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    for (&(def, _, k, j), q) in cases.iter().zip(&ratios) {
        worst = worst.max(q[0]).max(q[1]).max(q[2]);
        let ok = q.iter().all(|&v| v <= ORACLE_ENVELOPE) && q[1] <= q[0] && q[2] <= q[1];
        if !ok {
            bad.push(format!("{def:?}({k},{j}) [{:.2}, {:.2}, {:.2}]", q[0], q[1], q[2]));
        }
    }
    let detail = if bad.is_empty() {
        format!("max |residual|/x^0.6 {worst:.3}")
    } else {
        format!("{}/{} cases outside: {}", bad.len(), cases.len(), bad.join(", "))
    };
    r.line("2a", bad.is_empty(), "A-sums vs residue polynomials, |res| <= 5x^0.6 and non-increasing", detail, t);

    let t = Instant::now();
    let x = 1e6;
    let mut ratios = Vec::new();
    for n in 1..=2 {
        let table = engine.hugpc(n).unwrap();
        let brute = if n % 2 == 1 { 1.0 } else { -1.0 } * brute_sum_psi_n(n, x).unwrap().value;
        ratios.push((brute - eval_residue_polynomial(&table.positive, n + 1, x)).abs() / x.powf(0.6));
    }
    let pass = ratios.iter().all(|&v| v <= ORACLE_ENVELOPE);
    r.line("2b", pass, "HugPC vs brute psi_n at 1e6, n = 1, 2", format!("|res|/x^0.6 = {ratios:.3?}"), t);
}

fn criterion_3(r: &mut Report) {
    let acc = EvalAccuracy::default();
    let pts = common::strip_points(200, 10.0, 1e4, 0x5eed);
    let ts = common::ordinates(200, 10.0, 1e4, 0x7a11);

    let t = Instant::now();
    let fe = pts
        .iter()
        .map(|&s| (zeta(s, acc).unwrap() - chi(s).unwrap() * zeta(s.reflect(), acc).unwrap()).norm())
        .fold(0.0, f64::max);
    r.line("3a", fe <= TOL_FE, "functional equation, 200 strip points", format!("max {fe:.1e}"), t);

    let t = Instant::now();
    let m = ts
        .iter()
        .map(|&x| (chi(ComplexPoint::critical(x)).unwrap().norm() - 1.0).abs())
        .fold(0.0, f64::max);
    r.line("3b", m <= TOL_CHI_MODULUS, "|chi(1/2+it)| = 1", format!("max {m:.1e}"), t);

    let t = Instant::now();
    let im = ts.iter().map(|&x| hardy_z_with_residue(x, acc).unwrap().1.abs()).fold(0.0, f64::max);
    r.line("3c", im <= TOL_Z_REAL, "Z real", format!("max |Im| {im:.1e}"), t);

    let t = Instant::now();
    let cg1 = ts
        .iter()
        .map(|&x| (z1(ComplexPoint::critical(x), acc).unwrap().norm() - hardy_z_deriv(x, acc).unwrap().abs()).abs())
        .fold(0.0, f64::max);
    r.line("3d", cg1 <= TOL_CG1, "|Z_1(1/2+it)| = |Z'(t)|", format!("max {cg1:.1e}"), t);

    let t = Instant::now();
    let cg2 = pts
        .iter()
        .map(|&s| (z1(s, acc).unwrap() + chi(s).unwrap() * z1(s.reflect(), acc).unwrap()).norm())
        .fold(0.0, f64::max);
    r.line("3e", cg2 <= TOL_CG2, "Z_1(s) + chi(s) Z_1(1-s) = 0", format!("max {cg2:.1e}"), t);

    let t = Instant::now();
    let oracle = common::Z1DirichletOracle::new(100_000, 80);
    let mut worst: f64 = 0.0;
    for height in [150.0, 300.0, 1000.0, 3000.0] {
        let s = ComplexPoint::new(2.0, height);
        let diff = (z1_log_deriv(s, acc).unwrap() - oracle.eval(s)).norm();
        worst = worst.max(diff * height * height.ln() / 3.0);
    }
    r.line(
        "3f",
        worst <= 1.0,
        "Z_1'/Z_1 vs Dirichlet series at Re s = 2, M = 1e5",
        format!("max |diff| / (3/(t log t)) = {worst:.2e}"),
        t,
    );
}

/// First `n` unflagged λ, keeping the table's completeness semantics.
fn unflagged_prefix(table: &ZeroTable, n: usize) -> ZeroTable {
    let points: Vec<_> = table.points.iter().filter(|p| !p.flagged).take(n).copied().collect();
    ZeroTable {
        t_max: points.last().map_or(table.t_max, |p| p.ordinate),
        points,
        kind: table.kind,
    }
}

fn criterion_4(r: &mut Report, gammas: &ZeroTable, lambdas: &ZeroTable) {
    let acc = EvalAccuracy::default();
    let t = Instant::now();
    let mut deltas = Vec::new();
    for t_max in [100.0, 1000.0, 1e4] {
        deltas.push(verify_counts(&gammas.truncated(t_max), acc).unwrap().delta);
    }
    deltas.push(verify_counts(lambdas, acc).unwrap().delta);
    let pass = deltas.iter().all(|&d| d == 0);
    r.line(
        "4a",
        pass,
        "counts reconcile at 100, 1e3, 1e4 (gamma) and 1e4 (lambda)",
        format!("deltas {deltas:?}, {} gamma, {} lambda", gammas.len(), lambdas.len()),
        t,
    );

    let t = Instant::now();
    let flagged: Vec<f64> = lambdas.points.iter().filter(|p| p.flagged).map(|p| p.ordinate).collect();
    let rest: Vec<f64> = lambdas.points.iter().filter(|p| !p.flagged).map(|p| p.ordinate).collect();
    let g = gammas.ordinates();
    let mut wrong = 0;
    let mut cursor = 0;
    for pair in g.windows(2) {
        while cursor < rest.len() && rest[cursor] <= pair[0] {
            cursor += 1;
        }
        let start = cursor;
        while cursor < rest.len() && rest[cursor] < pair[1] {
            cursor += 1;
        }
        if cursor - start != 1 {
            wrong += 1;
        }
    }
    let below = flagged.len() == 2 && flagged.iter().all(|&x| x < g[0]);
    let none_before = rest.first().is_some_and(|&x| x > g[0]);
    r.line(
        "4b",
        wrong == 0 && below && none_before,
        "interlacing: one lambda per gap, two flagged below gamma_1",
        format!("{wrong} bad gaps of {}, flagged {flagged:.4?}", g.len() - 1),
        t,
    );
}

fn criterion_5(r: &mut Report, engine: &Engine, gammas: &ZeroTable, lambdas: &ZeroTable) {
    let acc = EvalAccuracy::default();
    let gam = gammas.first(DESK_ZEROS);
    let lam = unflagged_prefix(lambdas, DESK_ZEROS);
    let cases = [
        ("5a", Observable::ChiAtGamma, &gam),
        ("5b", Observable::ZetaDerivN(1), &lam),
        ("5c", Observable::Zeta, &lam),
        ("5d", Observable::ChiAtLambda, &lam),
    ];
    for (id, obs, table) in cases {
        let t = Instant::now();
        let sum = accumulate(obs, table, acc, false).unwrap();
        let report = compare(&sum, &obs.default_table(engine, 3).unwrap()).unwrap();
        let checks = envelope_checks(&report);
        let pass = checks.iter().all(|c| c.pass || !c.hard);
        let detail = checks
            .iter()
            .map(|c| format!("{} {:.4} vs {:.4}", c.name, c.value, c.bound))
            .collect::<Vec<_>>()
            .join("; ");
        r.line(id, pass, &format!("{} over first {} points", obs.label(), table.len()), detail, t);
    }

    let t = Instant::now();
    let sum = accumulate(Observable::ZSquared, &lam, acc, false).unwrap();
    let m = second_moment_check(&sum).unwrap();
    let tag = if m.within_band { "in band" } else { "outside band (soft)" };
    println!(
        "SOFT 5e  Z^2 at lambda: two-term ratio {:.4} ({tag}), one-term ratio {:.4} at T = {:.1} ({:.1}s)",
        m.ratio_two_term,
        m.ratio_one_term,
        m.t,
        t.elapsed().as_secs_f64()
    );
}

fn all_tables(engine: &Engine) -> Vec<CoefficientTable> {
    let mut out: Vec<_> = (1..=5).map(|n| engine.thm1(n, 4).unwrap()).collect();
    out.push(engine.corollary(4).unwrap());
    out.push(engine.thm2(4).unwrap());
    out.push(engine.thm3(4).unwrap());
    out
}

fn criterion_6(r: &mut Report, engine: &Engine) {
    let t = Instant::now();
    let base = all_tables(engine);
    let doubled = Engine::new(engine.stieltjes().clone()).with_k_max(2 * engine.k_max());
    let wide = Engine::new(engine.stieltjes().clone()).with_width_padding(12);
    let mut worst: f64 = 0.0;
    for other in [all_tables(&doubled), all_tables(&wide)] {
        for (a, b) in base.iter().zip(&other) {
            for (x, y) in a.positive.iter().chain(&a.negative).zip(b.positive.iter().chain(&b.negative)) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    r.line(
        "6",
        worst <= TOL_TRUNCATION,
        "doubling k_max and series width",
        format!("max change {worst:.1e}"),
        t,
    );
}

fn main() -> ExitCode {
    let started = Instant::now();
    let engine = Engine::default();
    let mut r = Report {
        unexpected: Vec::new(),
        known: Vec::new(),
    };
    criterion_1(&mut r, &engine);
    criterion_2(&mut r, &engine);
    criterion_3(&mut r);

    let t = Instant::now();
    let acc = EvalAccuracy::default();
    let gammas = find_zeta_zeros(1e4, acc).unwrap();
    let lambdas = find_zprime_zeros(&gammas, acc).unwrap();
    println!("---- zero tables to T = 1e4 in {:.1}s", t.elapsed().as_secs_f64());
    criterion_4(&mut r, &gammas, &lambdas);
    criterion_5(&mut r, &engine, &gammas, &lambdas);
    criterion_6(&mut r, &engine);

    println!(
        "---- {} unexpected failure(s) {:?}, {} known {:?}, {:.1}s total",
        r.unexpected.len(),
        r.unexpected,
        r.known.len(),
        r.known,
        started.elapsed().as_secs_f64()
    );
    if r.unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
