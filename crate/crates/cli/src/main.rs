//! `dampwave`: command-line front end to the decay laboratory.
//!
//! Exit codes: 0 all checks pass, 1 a check failed or a computation broke
//! down, 2 configuration error (nothing written).

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use dampwave::decay::report::{points_csv, series_csv, summary_csv};
use dampwave::decay::scenarios::{find_scenario, SeriesRow};
use dampwave::decay::{
    alpha_sup, fit_decay, norm_series, run_suite, theorem_scenarios, AlphaQuery, AlphaResult,
    ProblemSetup, Quantity, ScenarioOutcome, SeriesPoint,
};
use dampwave::oracle::{kernel_oracle_check, OracleCheckConfig};
use dampwave::{check_hypotheses, ProbeConfig, ZoneSelect};

use config::{config_err, ConfigError, Settings};

#[derive(Parser, Debug)]
#[command(name = "dampwave", version, about = "Fourier-space decay laboratory for strongly damped waves")]
struct Cli {
    /// TOML config file; flags override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Named `[section.NAME]` table of the config file to apply
    #[arg(long, global = true)]
    section: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Probe the small- and large-frequency behaviour of a symbol
    HypothesisCheck(Flags),
    /// Estimate the largest admissible small-frequency decay exponent
    Alpha(Flags),
    /// Norm series of the solution on a zone
    Solve(Flags),
    /// Norm series plus a log-log slope fit
    DecayFit(Flags),
    /// Solution and profile-residual series with the fitted gain
    Profiles(Flags),
    /// Closed-form kernels against a brute-force RK4 integration
    OracleCheck(Flags),
    /// List or run the canned scenarios
    Scenarios {
        #[command(flatten)]
        flags: Flags,
        /// Print scenario names and exit
        #[arg(long)]
        list: bool,
        /// Run the named scenarios (all when no names are given)
        #[arg(long, num_args = 0..)]
        run: Option<Vec<String>>,
    },
}

#[derive(clap::Args, Debug, Clone)]
struct Flags {
    #[command(flatten)]
    settings: Settings,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<ConfigError>().is_some() {
        return 2;
    }
    match e.downcast_ref::<dampwave::Error>() {
        Some(
            dampwave::Error::UnknownSymbol(_)
            | dampwave::Error::InvalidParameter(_)
            | dampwave::Error::MetadataMismatch { .. }
            | dampwave::Error::DivergentSmallFrequency(_)
            | dampwave::Error::EmptyAlphaSet(_)
            | dampwave::Error::FitDomain(_),
        ) => 2,
        _ => 1,
    }
}

fn resolve(cli: &Cli, flags: &Settings) -> anyhow::Result<Settings> {
    let mut s = match &cli.config {
        Some(path) => Settings::load(path, cli.section.as_deref())?,
        None if cli.section.is_some() => return Err(config_err("--section needs --config")),
        None => Settings::default(),
    };
    s.overlay(flags);
    Ok(s)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::HypothesisCheck(f) => hypothesis_check(&resolve(&cli, &f.settings)?),
        Command::Alpha(f) => alpha(&resolve(&cli, &f.settings)?),
        Command::Solve(f) => solve(&resolve(&cli, &f.settings)?),
        Command::DecayFit(f) => decay_fit(&resolve(&cli, &f.settings)?),
        Command::Profiles(f) => profiles(&resolve(&cli, &f.settings)?),
        Command::OracleCheck(f) => oracle_check(&resolve(&cli, &f.settings)?),
        Command::Scenarios { flags, list, run } => {
            let cfg = resolve(&cli, &flags.settings)?;
            if *list {
                for s in theorem_scenarios() {
                    println!("{:<36} {}", s.name, s.description);
                }
                return Ok(true);
            }
            let names = match run {
                Some(names) if !names.is_empty() => names.clone(),
                Some(_) => cfg.scenarios.clone().unwrap_or_default(),
                None if cfg.scenarios.is_some() => cfg.scenarios.clone().unwrap_or_default(),
                None => return Err(config_err("scenarios needs --list or --run")),
            };
            scenarios(&cfg, &names)
        }
    }
}

fn hypothesis_check(cfg: &Settings) -> anyhow::Result<bool> {
    let sym = cfg.symbol()?;
    let rep = check_hypotheses(&sym, &ProbeConfig::default())?;
    println!("symbol            {}", sym.label());
    println!("r*mu near 0       {:?} (limit zero: {})", rep.small_trend, rep.small_limit_ok);
    println!("r*mu at infinity  {:?} ({:?})", rep.large_rmu_trend, rep.large_limit_kind);
    println!("mu at infinity    {:?} ({:?})", rep.large_mu_trend, rep.regularity_class);
    if rep.ambiguous {
        println!("note              oscillating tail; classification uses the envelope");
    }
    for m in &rep.mismatches {
        println!("mismatch          {m}");
    }
    Ok(rep.is_consistent())
}

fn alpha(cfg: &Settings) -> anyhow::Result<bool> {
    let mut q = AlphaQuery::new(cfg.symbol()?, cfg.n()?, cfg.s()?);
    q.eps = cfg.zones()?.eps;
    if let Some(tol) = cfg.tol {
        q.tol = cfg.tol(tol)?;
    }
    match alpha_sup(&q)? {
        AlphaResult::Value(a) => println!("{a:.4} ± {}", q.tol),
        AlphaResult::Unbounded => println!("unbounded"),
    }
    Ok(true)
}

/// Validated inputs shared by the series commands.
fn problem(cfg: &Settings) -> anyhow::Result<(ProblemSetup, Vec<f64>)> {
    let sym = cfg.symbol()?;
    let (u0, u1) = cfg.data()?;
    let mut p = ProblemSetup::new(sym, cfg.n()?, u0, u1);
    p.s = cfg.s()?;
    (p.ell0, p.ell1) = cfg.ell()?;
    p.zp = cfg.zones()?;
    p.validate().map_err(|e| config_err(e.to_string()))?;
    Ok((p, cfg.times()?))
}

fn outcome(name: &str, p: &ProblemSetup, rows: Vec<SeriesRow>, slope: f64) -> ScenarioOutcome {
    ScenarioOutcome {
        name: name.into(),
        symbol: p.sym.label(),
        n: p.n,
        rows,
        slope,
        expected: String::new(),
        tolerance: 0.0,
        pass: true,
        note: String::new(),
    }
}

fn rows(series: &[SeriesPoint], quantity: Quantity, zone: ZoneSelect) -> Vec<SeriesRow> {
    series
        .iter()
        .map(|x| SeriesRow { t: x.t, norm: x.norm, quantity: quantity.as_str().into(), zone: zone.as_str().into() })
        .collect()
}

fn solve(cfg: &Settings) -> anyhow::Result<bool> {
    let (p, times) = problem(cfg)?;
    let (quantity, zone) = (cfg.quantity()?, cfg.zone()?);
    let series = norm_series(&p, quantity, zone, &times)?;
    let csv = points_csv(&series, quantity.as_str(), zone.as_str(), &p.sym.label(), p.n)?;
    output::emit(cfg.output.as_deref(), &[("series.csv".into(), csv)])?;
    Ok(true)
}

fn decay_fit(cfg: &Settings) -> anyhow::Result<bool> {
    let (p, times) = problem(cfg)?;
    let (quantity, zone) = (cfg.quantity()?, cfg.zone()?);
    let tol = cfg.tol(0.05)?;
    let series = norm_series(&p, quantity, zone, &times)?;
    let fit = fit_decay(&series)?;
    let mut o = outcome("decay-fit", &p, rows(&series, quantity, zone), fit.slope);
    if let Some(want) = cfg.expect_slope {
        o.expected = want.to_string();
        o.tolerance = tol;
        o.pass = (fit.slope - want).abs() <= tol;
    }
    println!(
        "slope {:.4} on t in [{}, {}] ({} points, {}), max residual {:.2e}",
        fit.slope,
        fit.t_window.0,
        fit.t_window.1,
        fit.points,
        fit.class.as_str(),
        fit.max_residual
    );
    let files = [("series.csv".to_string(), series_csv(&o)?), ("summary.csv".to_string(), summary_csv(std::slice::from_ref(&o))?)];
    if cfg.output.is_some() {
        output::emit(cfg.output.as_deref(), &files)?;
    }
    Ok(o.pass)
}

fn profiles(cfg: &Settings) -> anyhow::Result<bool> {
    let (p, times) = problem(cfg)?;
    let zone = cfg.zone()?;
    let sol = norm_series(&p, Quantity::SolutionItself, zone, &times)?;
    let res = norm_series(&p, Quantity::ProfileResidual, zone, &times)?;
    let (fs, fr) = (fit_decay(&sol)?, fit_decay(&res)?);
    println!("solution slope          {:.4}", fs.slope);
    println!("profile-residual slope  {:.4}", fr.slope);
    println!("gain                    {:.4}", fs.slope - fr.slope);
    let mut all = rows(&sol, Quantity::SolutionItself, zone);
    all.extend(rows(&res, Quantity::ProfileResidual, zone));
    let series = outcome("profiles", &p, all, fr.slope);
    let summary = [
        outcome(Quantity::SolutionItself.as_str(), &p, Vec::new(), fs.slope),
        outcome(Quantity::ProfileResidual.as_str(), &p, Vec::new(), fr.slope),
    ];
    if cfg.output.is_some() {
        output::emit(
            cfg.output.as_deref(),
            &[("series.csv".into(), series_csv(&series)?), ("summary.csv".into(), summary_csv(&summary)?)],
        )?;
    }
    Ok(true)
}

fn oracle_check(cfg: &Settings) -> anyhow::Result<bool> {
    let sym = cfg.symbol()?;
    let occ = OracleCheckConfig { samples: cfg.samples()?, seed: cfg.seed.unwrap_or(0), ..Default::default() };
    let rep = kernel_oracle_check(&sym, &occ)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["r", "t", "regime", "k0", "k1", "rk4_k0", "rk4_k1", "error", "pass"])?;
    println!("{:>10} {:>10} {:<12} {:>10} pass", "r", "t", "regime", "error");
    for s in &rep.samples {
        println!("{:>10.5} {:>10.5} {:<12} {:>10.2e} {}", s.r, s.t, s.regime.as_str(), s.error, if s.pass { "ok" } else { "FAIL" });
        w.write_record([
            s.r.to_string(),
            s.t.to_string(),
            s.regime.as_str().into(),
            s.k0.to_string(),
            s.k1.to_string(),
            s.rk4_k0.to_string(),
            s.rk4_k1.to_string(),
            s.error.to_string(),
            s.pass.to_string(),
        ])?;
    }
    println!(
        "{}: {} samples, max error {:.2e}, confluent point: {}",
        rep.symbol,
        rep.samples.len(),
        rep.max_error(),
        if rep.has_confluent() { "yes" } else { "not reachable" }
    );
    let body = String::from_utf8(w.into_inner().context("flushing csv")?)?;
    if cfg.output.is_some() {
        output::emit(cfg.output.as_deref(), &[("oracle.csv".into(), body)])?;
    }
    Ok(rep.passed())
}

fn scenarios(cfg: &Settings, names: &[String]) -> anyhow::Result<bool> {
    let specs = if names.is_empty() {
        theorem_scenarios()
    } else {
        names.iter().map(|n| find_scenario(n).map_err(|e| config_err(e.to_string()))).collect::<anyhow::Result<_>>()?
    };
    let outcomes: Vec<ScenarioOutcome> = run_suite(&specs).into_iter().collect::<Result<_, _>>()?;
    let mut files = Vec::with_capacity(outcomes.len() + 1);
    for o in &outcomes {
        println!("{:<36} slope {:>10.4}  expected {:<24} {}", o.name, o.slope, o.expected, if o.pass { "PASS" } else { "FAIL" });
        files.push((format!("{}.csv", o.name), series_csv(o)?));
    }
    files.push(("summary.csv".into(), summary_csv(&outcomes)?));
    if cfg.output.is_some() {
        output::emit(cfg.output.as_deref(), &files)?;
    }
    Ok(outcomes.iter().all(|o| o.pass))
}
