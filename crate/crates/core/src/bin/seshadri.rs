use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use seshadri::bounds::{bounds_report, bounds_report_from_minimum, BoundsReport};
use seshadri::experiments::{search_max_min_period_with, DEFAULT_SPREAD};
use seshadri::io::{read_period_file, PeriodInput};
use seshadri::lattice::{brute_force_shortest, certified_box, shortest_vector};
use seshadri::period::gram_from_period;
use seshadri::surface::surface_summary;
use seshadri::symplectic::{verify_all, BlowupProfile, PullbackMode, Sweep, DEFAULT_ETA};

#[derive(Parser)]
#[command(name = "seshadri", version, about = "Minimal periods and Seshadri-constant bounds")]
struct Cli {
    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shortest period of a period matrix.
    Svp {
        #[arg(long)]
        input: PathBuf,
        /// Use exhaustive search instead of enumeration.
        #[arg(long)]
        oracle: bool,
        /// Search box for --oracle; defaults to the certified radius.
        #[arg(long = "box")]
        box_size: Option<i64>,
    },
    /// Seshadri-constant bounds for a genus, optionally for a given period matrix.
    Bounds {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        gonality: Option<u32>,
        #[arg(long)]
        jacobian: bool,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Intersection numbers on C x C.
    Surface {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        gonality: Option<u32>,
    },
    /// Numerical checks of the local blow-up form.
    Blowup {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 0.8)]
        lambda: f64,
        #[arg(long, default_value_t = DEFAULT_ETA)]
        eta: f64,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Analytic)]
        mode: Mode,
    },
    /// Hill-climb for period matrices with a large minimal period.
    Search {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SPREAD)]
        spread: f64,
    },
    /// Shortest period and bounds report in one call.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        gonality: Option<u32>,
        #[arg(long)]
        jacobian: bool,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Mode {
    Analytic,
    Fd,
}

fn emit<T: Serialize>(value: &T, output: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match output {
        Some(path) => std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn svp_json(input: &PeriodInput, oracle: bool, box_size: Option<i64>) -> Result<serde_json::Value> {
    let tau = input.to_float()?;
    let gram = gram_from_period(&tau)?;
    let result = if oracle {
        let b = match box_size {
            Some(b) => b,
            None => certified_box(&gram)?,
        };
        brute_force_shortest(&gram, b)?
    } else {
        shortest_vector(&gram)?
    };
    let mut out = serde_json::to_value(&result)?;
    if let PeriodInput::Exact(exact) = input {
        let q = seshadri::rational::quadratic_value(&exact.gram()?, &result.vector.coords());
        out["exact_value"] = json!(q.to_string());
    }
    Ok(out)
}

fn report_flags(report: &BoundsReport) -> bool {
    for flag in &report.consistency_flags {
        eprintln!("consistency flag raised: {flag:?}");
    }
    report.is_consistent()
}

fn run(cli: Cli) -> Result<bool> {
    let out = cli.output.as_deref();
    match cli.command {
        Command::Svp { input, oracle, box_size } => {
            let input = read_period_file(&input)?;
            emit(&svp_json(&input, oracle, box_size)?, out)?;
            Ok(true)
        }
        Command::Bounds { genus, gonality, jacobian, input } => {
            let tau = input.map(|p| read_period_file(&p)?.to_float()).transpose()?;
            let report = bounds_report(tau.as_ref(), genus, gonality, jacobian)?;
            emit(&report, out)?;
            Ok(report_flags(&report))
        }
        Command::Surface { genus, gonality } => {
            emit(&surface_summary(genus, gonality)?, out)?;
            Ok(true)
        }
        Command::Blowup { dim, lambda, eta, delta, samples, tol, seed, mode } => {
            let profile = BlowupProfile::new(dim, lambda, eta, delta)?;
            let mode = match mode {
                Mode::Analytic => PullbackMode::Analytic,
                Mode::Fd => PullbackMode::FiniteDifference,
            };
            let reports = verify_all(&profile, &Sweep::new(samples, tol, seed).with_mode(mode))?;
            emit(&reports, out)?;
            let mut ok = true;
            for r in reports.iter().filter(|r| !r.pass) {
                eprintln!("{:?} check failed: deviation {:e} > {:e}", r.region, r.max_abs_deviation, r.tol);
                ok = false;
            }
            Ok(ok)
        }
        Command::Search { genus, iters, seed, spread } => {
            let result = search_max_min_period_with(genus, iters, seed, spread)?;
            if result.ratio < 1.0 {
                eprintln!(
                    "warning: best m = {} is below the reference {}",
                    result.best_m, result.bs1_reference
                );
            }
            emit(&result, out)?;
            Ok(true)
        }
        Command::Analyze { input, gonality, jacobian } => {
            let input = read_period_file(&input)?;
            let svp = svp_json(&input, false, None)?;
            let m = svp["value"].as_f64().context("missing svp value")?;
            let report = bounds_report_from_minimum(Some(m), input.genus() as u32, gonality, jacobian)?;
            emit(&json!({ "svp": svp, "bounds": report }), out)?;
            Ok(report_flags(&report))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
