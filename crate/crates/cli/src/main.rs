//! `smdiff`: re-runs the verification checks and inspects the underlying
//! objects (forms, class polynomials, singular moduli, discriminant scans).

mod filter;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use smdiff::discriminants::{factor_discriminant, reduced_forms, scan_profiles};
use smdiff::jfun::{all_singular_moduli, class_polynomial_with_cap, dominant_singular_modulus, ValueSummary};
use smdiff::report::{CheckReport, Status};
use smdiff::verifier::{run_checks, Config, CHECK_IDS};
use smdiff::{Disc, Error, Profile};

use filter::Filter;

const EXIT_FAIL: u8 = 1;
const EXIT_INDETERMINATE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 74;

/// Report file schema version.
const REPORT_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "smdiff", version, about = "Certified checks for linear relations between singular moduli")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification checks and optionally write a JSON report.
    Verify(VerifyArgs),
    /// Print forms, class polynomials, singular moduli or scan results.
    #[command(subcommand)]
    Inspect(Inspect),
}

#[derive(Args, Debug)]
struct Precision {
    /// Starting working precision in bits.
    #[arg(long, default_value_t = Config::default().precision_bits)]
    precision_bits: u32,
    /// Largest precision any escalation may reach.
    #[arg(long, default_value_t = Config::default().precision_cap)]
    precision_cap: u32,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run every check.
    #[arg(long, conflicts_with = "check")]
    all: bool,
    /// Check id to run; may be repeated.
    #[arg(long = "check", value_name = "ID", required_unless_present = "all")]
    check: Vec<String>,
    #[command(flatten)]
    precision: Precision,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Where to write the JSON report.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Directory of the j-coefficient cache; overrides SMDIFF_CACHE_DIR.
    #[arg(long, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Largest number of q-expansion coefficients to compute.
    #[arg(long)]
    max_coefficients: Option<usize>,
}

#[derive(Subcommand, Debug)]
#[command(allow_negative_numbers = true)]
enum Inspect {
    /// Reduced forms of a discriminant.
    #[command(allow_negative_numbers = true)]
    Forms { delta: i64 },
    /// Class polynomial of a discriminant.
    #[command(allow_negative_numbers = true)]
    Classpoly {
        delta: i64,
        #[command(flatten)]
        precision: Precision,
    },
    /// Certified singular moduli of a discriminant.
    #[command(allow_negative_numbers = true)]
    Eval {
        delta: i64,
        /// All moduli (the default).
        #[arg(long, conflicts_with = "dominant")]
        all: bool,
        /// Only the dominant modulus.
        #[arg(long)]
        dominant: bool,
        #[command(flatten)]
        precision: Precision,
    },
    /// Discriminants with `|Δ| ≤ max-abs` matching a filter expression.
    Scan {
        #[arg(long)]
        max_abs: u64,
        /// For example `two_elementary && h <= 16`.
        #[arg(long, default_value = "")]
        filter: String,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidDiscriminant(_) | Error::InvalidForm(_) | Error::UnsupportedTarget(_) => EXIT_DATA,
            Error::UnknownCheck(_) | Error::InvalidConfig(_) => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self { code: EXIT_IO, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Inspect(cmd) => inspect(cmd).map(|()| 0),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("smdiff: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[derive(Serialize)]
struct ReportFile<'a> {
    version: u32,
    checks: &'a [CheckReport],
    config: &'a Config,
}

fn verify(args: VerifyArgs) -> Result<u8, Failure> {
    let defaults = Config::default();
    let cfg = Config {
        precision_bits: args.precision.precision_bits,
        precision_cap: args.precision.precision_cap,
        max_coefficients: args.max_coefficients.unwrap_or(defaults.max_coefficients),
        jobs: args.jobs.unwrap_or(defaults.jobs),
        cache_dir: args.cache_dir,
        report_path: args.report,
    };
    let ids: Vec<String> = if args.all { CHECK_IDS.iter().map(|s| s.to_string()).collect() } else { args.check };
    if let Some(bad) = ids.iter().find(|id| !CHECK_IDS.contains(&id.as_str())) {
        return Err(Failure::usage(format!("unknown check id {bad:?}; known ids: {}", CHECK_IDS.join(", "))));
    }
    let reports = run_checks(&ids, &cfg)?;

    let mut out = io::stdout().lock();
    for r in &reports {
        writeln!(
            out,
            "{:<13} {:<20} candidates={} precision={} {}ms",
            r.status, r.check_id, r.candidate_count, r.precision_bits, r.elapsed_ms
        )?;
        for note in &r.notes {
            writeln!(out, "    {note}")?;
        }
    }
    if let Some(path) = &cfg.report_path {
        let file = ReportFile { version: REPORT_VERSION, checks: &reports, config: &cfg };
        let json = serde_json::to_string_pretty(&file).expect("report serializes");
        fs::write(path, json + "\n")?;
    }
    let status = reports.iter().fold(Status::Pass, |acc, r| acc.combine(r.status));
    Ok(match status {
        Status::Pass => 0,
        Status::Fail => EXIT_FAIL,
        Status::Indeterminate => EXIT_INDETERMINATE,
    })
}

fn discriminant(delta: i64) -> Result<Disc, Failure> {
    Ok(factor_discriminant(delta)?)
}

fn check_precision(p: &Precision) -> Result<(), Failure> {
    Config { precision_bits: p.precision_bits, precision_cap: p.precision_cap, ..Config::default() }.validate()?;
    Ok(())
}

fn inspect(cmd: Inspect) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match cmd {
        Inspect::Forms { delta } => {
            for f in reduced_forms(&discriminant(delta)?) {
                writeln!(out, "{f}")?;
            }
        }
        Inspect::Classpoly { delta, precision } => {
            check_precision(&precision)?;
            let d = discriminant(delta)?;
            writeln!(out, "{}", class_polynomial_with_cap(&d, precision.precision_bits, precision.precision_cap)?)?;
        }
        Inspect::Eval { delta, all: _, dominant, precision } => {
            check_precision(&precision)?;
            let d = discriminant(delta)?;
            let values = if dominant {
                vec![dominant_singular_modulus(&d, precision.precision_bits)?]
            } else {
                all_singular_moduli(&d, precision.precision_bits)?
            };
            for v in &values {
                let s = ValueSummary::from(v);
                let [a, b, c] = s.form;
                writeln!(out, "({a}, {b}, {c})  {} +/- {}  i: {} +/- {}", s.re, s.re_radius, s.im, s.im_radius)?;
            }
        }
        Inspect::Scan { max_abs, filter, jobs } => {
            let filter = Filter::parse(&filter).map_err(|e| Failure::usage(e.to_string()))?;
            let jobs = jobs.unwrap_or(Config::default().jobs);
            if jobs == 0 {
                return Err(Failure::usage("jobs must be at least 1"));
            }
            let pool =
                rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| Failure::usage(e.to_string()))?;
            let profiles = pool.install(|| scan_profiles(max_abs, |p: &Profile| filter.matches(p)));
            for p in profiles {
                writeln!(
                    out,
                    "{}\th={}\tambiguous={}\tD={}\tf={}",
                    p.value(),
                    p.h,
                    p.ambiguous_count,
                    p.delta.fundamental(),
                    p.delta.conductor()
                )?;
            }
        }
    }
    Ok(())
}
