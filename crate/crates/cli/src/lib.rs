//! Command-line scenario runner: reproduces the workbench's checks from a
//! JSON config and exits with a machine-readable verdict.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 on
//! configuration or usage errors.

pub mod config;
pub mod report;
pub mod runners;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use config::RunConfig;
use report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "photonbox",
    version,
    about = "Periodic-box photon field workbench"
)]
struct Cli {
    /// JSON configuration file (defaults apply when omitted)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Directory for the report and scan artifacts
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Override the commutation scheme: standard | modified
    #[arg(long, global = true)]
    scheme: Option<String>,

    /// Override the per-oscillator truncation
    #[arg(long, global = true)]
    nmax: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vacuum-energy table: standard raw, normal ordered, modified scheme
    VacuumEnergy,
    /// Commutation-relation checks, symbolic and realized
    VerifyCommutators,
    /// Light-cone kernel scan with quadrature cross-checks
    Causality,
    /// Vacuum expectation of an expression, exact and numeric
    Vev {
        /// Expression text, e.g. "ad[1,0]*a[1,0] + 1/3"
        expression: Option<String>,
        /// File with one expression per line; '#' starts a comment
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Every section in one report
    All,
}

const EXIT_OK: i32 = 0;
const EXIT_CHECK_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;

/// Entry point; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message (including --help/--version)
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, String> {
    let mut cfg = match &cli.config {
        None => RunConfig::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            RunConfig::from_json(&text).map_err(|e| e.to_string())?
        }
    };
    if let Some(scheme) = &cli.scheme {
        cfg.scheme = match scheme.as_str() {
            "standard" => config::SchemeConfig::Standard,
            "modified" => config::SchemeConfig::Modified { n: None },
            other => {
                return Err(format!(
                    "--scheme must be 'standard' or 'modified' (custom schemes go in the config file), got {other:?}"
                ))
            }
        };
    }
    if let Some(n) = cli.nmax {
        cfg.n_max = n;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn execute(cli: Cli) -> Result<i32, String> {
    let cfg = load_config(&cli)?;
    let echo = serde_json::to_value(&cfg).expect("config serializes");
    let mut report = Report::new(echo);
    let mut scan_csv: Option<String> = None;

    match &cli.command {
        Command::VacuumEnergy => {
            report.extend(runners::run_vacuum_energy(&cfg).map_err(|e| e.to_string())?);
        }
        Command::VerifyCommutators => {
            report.extend(runners::run_verify_commutators(&cfg).map_err(|e| e.to_string())?);
        }
        Command::Causality => {
            let (checks, rows) = runners::run_causality(&cfg).map_err(|e| e.to_string())?;
            report.extend(checks);
            scan_csv = Some(runners::scan_to_csv(&rows));
        }
        Command::Vev { expression, file } => {
            let mut expressions: Vec<String> = Vec::new();
            if let Some(text) = expression {
                expressions.push(text.clone());
            }
            if let Some(path) = file {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                expressions.extend(
                    text.lines()
                        .map(str::trim)
                        .filter(|l| !l.is_empty() && !l.starts_with('#'))
                        .map(str::to_string),
                );
            }
            if expressions.is_empty() {
                return Err("vev needs an expression argument or --file".to_string());
            }
            for e in &expressions {
                report.extend(runners::run_vev(e, &cfg).map_err(|err| err.to_string())?);
            }
        }
        Command::All => {
            report.extend(runners::run_vacuum_energy(&cfg).map_err(|e| e.to_string())?);
            report.extend(runners::run_verify_commutators(&cfg).map_err(|e| e.to_string())?);
            let (checks, rows) = runners::run_causality(&cfg).map_err(|e| e.to_string())?;
            report.extend(checks);
            scan_csv = Some(runners::scan_to_csv(&rows));
        }
    }

    let rendered = report.to_json();
    print!("{rendered}");
    if let Some(dir) = &cli.out {
        std::fs::create_dir_all(dir)
            .map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
        std::fs::write(dir.join("report.json"), &rendered)
            .map_err(|e| format!("cannot write report: {e}"))?;
        if let Some(csv) = &scan_csv {
            std::fs::write(dir.join("causality_scan.csv"), csv)
                .map_err(|e| format!("cannot write scan: {e}"))?;
        }
    }

    Ok(if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
