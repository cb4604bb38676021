use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use zext_core::asymptotics::Engine;
use zext_core::empirical::{accumulate, compare, second_moment_check, ComparisonSummary};
use zext_core::zeros::{find_zeta_zeros, find_zprime_zeros, gram_point, verify_counts};
use zext_core::{CoefficientTable, Observable, RunConfig, StieltjesTable, ZeroTable};

use crate::args::{Cli, Command, CommonArgs, ObservableArg, TheoremArg};
use crate::{selftest, CheckFailure};

#[derive(Serialize)]
struct RunRecord<'a> {
    version: &'a str,
    command: &'a Command,
    config: &'a RunConfig,
}

fn effective_config(args: &CommonArgs) -> Result<RunConfig> {
    let mut c = match &args.config {
        Some(p) => RunConfig::from_file(p).with_context(|| format!("reading {}", p.display()))?,
        None => RunConfig::default(),
    };
    macro_rules! take {
        ($($field:ident => $target:ident),*) => {
            $(if let Some(v) = args.$field.clone() { c.$target = v; })*
        };
    }
    take!(t_max => t_max, n => n, k_depth => k_depth, k_max => k_max, abs_tol => abs_tol,
          max_terms => max_terms, threads => threads, output_dir => output_dir, stride => stride);
    if args.include_sub_gamma1_lambdas {
        c.include_sub_gamma1_lambdas = true;
    }
    c.validate()?;
    Ok(c)
}

pub fn run(cli: Cli) -> Result<()> {
    let config = effective_config(&cli.common)?;
    fs::create_dir_all(&config.output_dir)
        .with_context(|| format!("creating {}", config.output_dir.display()))?;
    write_json(
        &config.output_dir.join("run.json"),
        &RunRecord {
            version: zext_core::VERSION,
            command: &cli.command,
            config: &config,
        },
    )?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()?;
    pool.install(|| match &cli.command {
        Command::Zeros => cmd_zeros(&config),
        Command::Coeffs { theorem } => cmd_coeffs(&config, theorem),
        Command::Sums { observable, zeros } => cmd_sums(&config, *observable, *zeros),
        Command::Compare { observable, zeros } => cmd_compare(&config, *observable, *zeros),
        Command::Selftest {
            quick,
            corrupt_stieltjes,
        } => {
            let table = match corrupt_stieltjes {
                Some(i) => StieltjesTable::corrupted(*i, 1e-6),
                None => StieltjesTable::embedded(),
            };
            cmd_selftest(&config, *quick, table)
        }
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    serde_json::to_writer_pretty(BufWriter::new(f), value)?;
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn cmd_zeros(config: &RunConfig) -> Result<()> {
    let acc = config.accuracy()?;
    let gammas = find_zeta_zeros(config.t_max, acc)?;
    let lambdas = find_zprime_zeros(&gammas, acc)?;
    gammas.write_csv(create(&config.output_dir.join("gamma.csv"))?)?;
    lambdas.write_csv(create(&config.output_dir.join("lambda.csv"))?)?;
    let reports = [verify_counts(&gammas, acc)?, verify_counts(&lambdas, acc)?];
    for r in &reports {
        println!(
            "{:<12} t_max={} expected={} found={} delta={} (naive θ count {})",
            r.kind.as_str(),
            r.t_max,
            r.expected_from_theta,
            r.found,
            r.delta,
            r.naive_from_theta
        );
    }
    write_json(&config.output_dir.join("counts.json"), &reports)?;
    if let Some(bad) = reports.iter().find(|r| r.delta != 0) {
        return Err(CheckFailure(format!(
            "{} count off by {} at t_max = {}",
            bad.kind.as_str(),
            bad.delta,
            bad.t_max
        ))
        .into());
    }
    Ok(())
}

fn engine(config: &RunConfig) -> Engine {
    Engine::default().with_k_max(config.k_max)
}

fn coefficient_table(config: &RunConfig, which: TheoremArg) -> Result<CoefficientTable> {
    let e = engine(config);
    let k = config.k_depth;
    Ok(match which {
        TheoremArg::Thm1 => e.thm1(config.n, k)?,
        TheoremArg::Corollary => e.corollary(k)?,
        TheoremArg::Thm2 => e.thm2(k)?,
        TheoremArg::Thm3 => e.thm3(k)?,
        TheoremArg::Thm4 => e.thm4(),
        TheoremArg::Hugpc => e.hugpc(config.n.max(1))?,
        TheoremArg::Hlpc2 => e.hlpc2(),
    })
}

fn cmd_coeffs(config: &RunConfig, requested: &[TheoremArg]) -> Result<()> {
    use TheoremArg::*;
    let all = [Thm1, Corollary, Thm2, Thm3, Thm4, Hugpc, Hlpc2];
    let which: &[TheoremArg] = if requested.is_empty() { &all } else { requested };
    let tables = which
        .iter()
        .map(|&t| coefficient_table(config, t))
        .collect::<Result<Vec<_>>>()?;
    write_json(&config.output_dir.join("coeffs.json"), &tables)?;
    println!("{}", serde_json::to_string_pretty(&tables)?);
    Ok(())
}

fn observable(config: &RunConfig, arg: ObservableArg) -> Observable {
    match arg {
        ObservableArg::ZetaDeriv => Observable::ZetaDerivN(config.n),
        ObservableArg::Zeta => Observable::Zeta,
        ObservableArg::ChiLambda => Observable::ChiAtLambda,
        ObservableArg::ChiGamma => Observable::ChiAtGamma,
        ObservableArg::ZSquared => Observable::ZSquared,
    }
}

fn file_stem(obs: Observable) -> String {
    match obs {
        Observable::ZetaDerivN(n) => format!("zeta_deriv_{n}"),
        other => other.label(),
    }
}

/// The table the observable runs over, already filtered for sub-γ₁ λ and
/// cut to `count` points when given.
fn zero_table(config: &RunConfig, obs: Observable, count: Option<usize>) -> Result<ZeroTable> {
    let acc = config.accuracy()?;
    let t_max = match count {
        // g_{N+10} lies comfortably above the N-th zero
        Some(n) => gram_point(n as u64 + 10)?.max(15.0),
        None => config.t_max,
    };
    let gammas = find_zeta_zeros(t_max, acc)?;
    let mut table = if obs == Observable::ChiAtGamma {
        gammas
    } else {
        let mut l = find_zprime_zeros(&gammas, acc)?;
        if !config.include_sub_gamma1_lambdas {
            l.points.retain(|p| !p.flagged);
        }
        l
    };
    if let Some(n) = count {
        if table.len() < n {
            anyhow::bail!("only {} zeros below t = {t_max}, wanted {n}", table.len());
        }
        table = table.first(n);
    }
    Ok(table)
}

fn cmd_sums(config: &RunConfig, arg: ObservableArg, count: Option<usize>) -> Result<()> {
    let obs = observable(config, arg);
    let table = zero_table(config, obs, count)?;
    let sum = accumulate(obs, &table, config.accuracy()?, true)?;
    let path = config.output_dir.join(format!("sums_{}.csv", file_stem(obs)));
    sum.write_csv(create(&path)?, config.stride)?;
    if let Some(last) = sum.last() {
        println!(
            "{}: {} points, final T = {:.6}, sum = {:.10e} {:+.10e}i",
            obs.label(),
            sum.points.len(),
            last.ordinate,
            last.partial_re,
            last.partial_im
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct CompareOutput<'a> {
    summary: &'a ComparisonSummary,
    table: &'a CoefficientTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    second_moment: Option<zext_core::empirical::SecondMomentReport>,
}

fn cmd_compare(config: &RunConfig, arg: ObservableArg, count: Option<usize>) -> Result<()> {
    let obs = observable(config, arg);
    let table = zero_table(config, obs, count)?;
    let sum = accumulate(obs, &table, config.accuracy()?, true)?;
    let coeffs = obs.default_table(&engine(config), config.k_depth)?;
    let report = compare(&sum, &coeffs)?;
    let stem = file_stem(obs);
    report.write_csv(create(&config.output_dir.join(format!("compare_{stem}.csv")))?, config.stride)?;
    let summary = ComparisonSummary::from_report(&report);
    let second_moment = if obs == Observable::ZSquared {
        Some(second_moment_check(&sum)?)
    } else {
        None
    };
    write_json(
        &config.output_dir.join(format!("compare_{stem}.json")),
        &CompareOutput {
            summary: &summary,
            table: &coeffs,
            second_moment,
        },
    )?;
    println!(
        "{}: {} points, final T = {:.6}, Im final = {:.4}",
        obs.label(),
        summary.points,
        summary.final_ordinate,
        summary.final_im
    );
    for (d, r) in summary.avg_abs_residual.iter().enumerate() {
        println!("  mean |residual| after {} terms: {:.6e}", d + 1, r);
    }
    for c in &summary.checks {
        let status = match (c.pass, c.hard) {
            (true, _) => "pass",
            (false, true) => "FAIL",
            (false, false) => "soft-fail",
        };
        println!("  [{status}] {} = {:.6} (bound {:.6})", c.name, c.value, c.bound);
    }
    if !summary.hard_pass {
        return Err(CheckFailure(format!("{} envelope check failed", obs.label())).into());
    }
    Ok(())
}

fn cmd_selftest(config: &RunConfig, quick: bool, table: StieltjesTable) -> Result<()> {
    let checks = selftest::run(quick, &table, config.accuracy()?);
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &checks {
        let status = match (c.pass, c.hard) {
            (true, _) => "pass",
            (false, true) => "FAIL",
            (false, false) => "soft",
        };
        println!("{status:<5} {:<width$}  {}", c.name, c.detail);
    }
    write_json(&config.output_dir.join("selftest.json"), &checks)?;
    let failed: Vec<_> = checks.iter().filter(|c| c.hard && !c.pass).map(|c| c.name.as_str()).collect();
    if !failed.is_empty() {
        return Err(CheckFailure(format!("self-test failures: {}", failed.join(", "))).into());
    }
    Ok(())
}
