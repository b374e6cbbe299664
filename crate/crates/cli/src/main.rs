//! Experiment harness: every quantitative claim in the library is one
//! subcommand away. Output is a CSV table plus a JSON summary; the exit
//! code is 0 exactly when every in-run assertion passed. Identical
//! config + seed reproduce byte-identical CSV data.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::ExperimentConfig;
use report::Report;

#[derive(Parser)]
#[command(name = "qregions", version, about = "prime ideals in thin regions of quadratic fields")]
struct Cli {
    /// JSON config file; CLI flags override individual fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(short = 'd', long, global = true, allow_hyphen_values = true)]
    d: Option<i64>,
    #[arg(short = 'x', long, global = true)]
    x: Option<f64>,
    #[arg(long, global = true)]
    y: Option<f64>,
    #[arg(long, global = true)]
    phi: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    phi0: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    omega: Option<f64>,
    #[arg(long, global = true)]
    y1: Option<f64>,
    #[arg(long, global = true)]
    eta: Option<f64>,
    #[arg(long, global = true)]
    delta: Option<f64>,
    #[arg(long, global = true)]
    trials: Option<u32>,
    #[arg(long, global = true)]
    targets: Option<u32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    sieve_cap: Option<u64>,
    #[arg(long, global = true)]
    enumeration_cap: Option<u64>,
    #[arg(long, global = true)]
    m_max: Option<i64>,
    #[arg(long, global = true)]
    bilinear: Option<bool>,
    /// Form coefficients "a,b,c".
    #[arg(long, global = true, value_parser = parse_form, allow_hyphen_values = true)]
    form: Option<[i64; 3]>,
    #[arg(long, global = true)]
    out_csv: Option<PathBuf>,
    #[arg(long, global = true)]
    out_json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant, signature, unit data, class number.
    FieldInfo,
    /// Fundamental unit of a real quadratic field.
    FundamentalUnit,
    /// Class number (and the reduced forms for imaginary fields).
    ClassNumber,
    /// Evaluate μ and λ^m for a generator or the ideals above a prime.
    CharEval {
        #[arg(long, allow_hyphen_values = true)]
        gen_u: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        gen_v: Option<i64>,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(short = 'm', long, default_value_t = 1, allow_hyphen_values = true)]
        m: i64,
    },
    /// Count prime ideals in one norm×angle region.
    RegionCount,
    /// Seeded random-φ₀ density scan over the theorem-regime region.
    DensityScan,
    /// Nearest represented prime to a real target point.
    PrimeNear {
        #[arg(short = 's', allow_hyphen_values = true)]
        s: f64,
        #[arg(short = 't', allow_hyphen_values = true)]
        t: f64,
    },
    /// Seeded random-target audit of the searches with the distance-law fit.
    SearchAudit,
    /// Thin/wide ratio-law measurement (add --bilinear true for the
    /// short-range pair variant).
    RatioCheck,
    /// Smooth-weight battery: mean exactness, coefficient bounds, truncation.
    SmoothingCheck,
    /// Dirichlet-polynomial sweep: E, main terms, truncation difference.
    DirichletSweep,
    /// Mellin main-term identity spot check against the termwise oracle.
    MellinCheck,
}

fn parse_form(s: &str) -> Result<[i64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected a,b,c".into());
    }
    let mut out = [0i64; 3];
    for (i, p) in parts.iter().enumerate() {
        out[i] = p.trim().parse().map_err(|e| format!("{e}"))?;
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = ExperimentConfig {
        d: cli.d,
        form: cli.form,
        x: cli.x,
        y: cli.y,
        phi: cli.phi,
        phi0: cli.phi0,
        omega: cli.omega,
        y1: cli.y1,
        eta: cli.eta,
        delta: cli.delta,
        trials: cli.trials,
        targets: cli.targets,
        seed: cli.seed,
        sieve_cap: cli.sieve_cap,
        enumeration_cap: cli.enumeration_cap,
        m_max: cli.m_max,
        bilinear: cli.bilinear,
        out_csv: cli.out_csv,
        out_json: cli.out_json,
    };
    if let Some(path) = &cli.config {
        match ExperimentConfig::load(path) {
            Ok(file_cfg) => cfg = cfg.or_else_from(file_cfg),
            Err(e) => {
                eprintln!("error: cannot read config {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
    }
    let result = run(&cli.command, &cfg);
    match result {
        Ok(rep) => {
            rep.print(20);
            if let Some(path) = &cfg.out_csv {
                if let Err(e) = rep.write_csv(path) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if let Some(path) = &cfg.out_json {
                if let Err(e) = rep.write_json(path) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if rep.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: &Command, cfg: &ExperimentConfig) -> qregions::Result<Report> {
    match cmd {
        Command::FieldInfo => commands::field_info(cfg),
        Command::FundamentalUnit => commands::fundamental_unit_cmd(cfg),
        Command::ClassNumber => commands::class_number_cmd(cfg),
        Command::CharEval { gen_u, gen_v, prime, m } => {
            commands::char_eval(cfg, *gen_u, *gen_v, *prime, *m)
        }
        Command::RegionCount => commands::region_count(cfg),
        Command::DensityScan => commands::density_scan(cfg),
        Command::PrimeNear { s, t } => commands::prime_near(cfg, *s, *t),
        Command::SearchAudit => commands::search_audit(cfg),
        Command::RatioCheck => commands::ratio_check_cmd(cfg),
        Command::SmoothingCheck => commands::smoothing_check(cfg),
        Command::DirichletSweep => commands::dirichlet_sweep_cmd(cfg),
        Command::MellinCheck => commands::mellin_check(cfg),
    }
}
