//! Command-line driver: scenario configuration, suite orchestration and reports.

mod config;
mod report;
mod suites;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::cech::CechError;

pub use config::{MarkedPoints, Scenario, ScenarioConfig, Suite, Tolerances, Trials};
pub use report::{Check, Report, RunInfo, Status};
pub use suites::{run_suite, Context};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_UNSTABLE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("cannot write {0}: {1}")]
    Io(String, std::io::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "projsymp",
    version,
    about = "Verification suites for the residue pairing and the Goldman form"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Scenario configuration (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub truncation: Option<i64>,
    /// Print the JSON report instead of the summary.
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Print a human-readable summary (the default).
    #[arg(long, global = true)]
    pub text: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Kernel, Möbius equivariance, symbol, splitting and brackets on the line.
    Jets,
    /// H₁ = H₂ with the calibrated constant.
    Lemma1,
    /// Residue theorem and parameter independence on the curve.
    Residues,
    /// Coboundaries pair to zero in both slots.
    Theorem1,
    /// The descended form on ℍ¹.
    Pairing,
    /// Dimensions, exactness and stabilization of the hypercohomology sequence.
    Sequence,
    /// Character-variety cohomology and the Goldman pairing.
    Goldman,
    /// Every suite listed in the configuration.
    All,
    /// Print the default configuration.
    DefaultConfig,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::All => "all",
            Command::DefaultConfig => "default-config",
            Command::Jets => "jets",
            Command::Lemma1 => "lemma1",
            Command::Residues => "residues",
            Command::Theorem1 => "theorem1",
            Command::Pairing => "pairing",
            Command::Sequence => "sequence",
            Command::Goldman => "goldman",
        }
    }

    fn suites(self, config: &ScenarioConfig) -> Vec<Suite> {
        let single = |s| vec![s];
        match self {
            Command::All => {
                let mut s = config.suites.clone();
                s.sort();
                s.dedup();
                s
            }
            Command::DefaultConfig => vec![],
            Command::Jets => single(Suite::Jets),
            Command::Lemma1 => single(Suite::Lemma1),
            Command::Residues => single(Suite::Residues),
            Command::Theorem1 => single(Suite::Theorem1),
            Command::Pairing => single(Suite::Pairing),
            Command::Sequence => single(Suite::Sequence),
            Command::Goldman => single(Suite::Goldman),
        }
    }
}

/// A finished run.
pub struct Outcome {
    pub report: Report,
    pub unstable: Option<CechError>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.unstable.is_some() {
            EXIT_UNSTABLE
        } else if self.report.passed {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

/// Runs the suites concurrently and assembles the report in suite order.
pub fn run_suites(
    scenario: &Scenario,
    command: &str,
    suites: &[Suite],
    config_path: Option<&str>,
) -> Outcome {
    let ctx = Context::new(scenario);
    let start = Instant::now();
    let results: Vec<(Suite, Vec<Check>, u64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| {
                let ctx = &ctx;
                scope.spawn(move || {
                    let start = Instant::now();
                    let checks = run_suite(ctx, suite);
                    (suite, checks, start.elapsed().as_millis() as u64)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });

    let config = &scenario.config;
    let mut run = RunInfo {
        wall_ms: start.elapsed().as_millis() as u64,
        timestamp_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        ..RunInfo::default()
    };
    let mut checks = Vec::new();
    for (suite, suite_checks, ms) in results {
        run.timings_ms.insert(suite.name().into(), ms);
        let mut replay = format!(
            "projsymp {} --seed {} --truncation {}",
            suite.name(),
            config.seed,
            config.truncation
        );
        if let Some(p) = config_path {
            replay.push_str(&format!(" --config {p}"));
        }
        for mut c in suite_checks {
            c.replay = replay.clone();
            checks.push(c);
        }
    }
    Outcome {
        report: Report::new(command, config.clone(), checks, run),
        unstable: ctx.unstable().cloned(),
    }
}

/// Parses the command line, runs the selected suites, prints and writes the
/// report, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_CONFIG
            } else {
                EXIT_PASS
            };
        }
    };
    let mut config = match &cli.config {
        Some(p) => match ScenarioConfig::load(p) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("{e}");
                return EXIT_CONFIG;
            }
        },
        None => ScenarioConfig::default(),
    };
    if cli.command == Command::DefaultConfig {
        println!(
            "{}",
            serde_json::to_string_pretty(&config).expect("config serializes")
        );
        return EXIT_PASS;
    }
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    if let Some(n) = cli.truncation {
        config.truncation = n;
    }
    let scenario = match config.validate() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_CONFIG;
        }
    };

    let suites = cli.command.suites(&scenario.config);
    let path = cli.config.as_ref().map(|p| p.display().to_string());
    let outcome = run_suites(&scenario, cli.command.name(), &suites, path.as_deref());

    if let Some(out) = &cli.out {
        if let Err(e) = std::fs::write(out, outcome.report.to_json() + "\n") {
            eprintln!("{}", CliError::Io(out.display().to_string(), e));
            return EXIT_CONFIG;
        }
    }
    if cli.json {
        println!("{}", outcome.report.to_json());
    } else {
        print!("{}", outcome.report.summary());
    }
    if let Some(CechError::UnstableTruncation { n, dim_n, dim_n2 }) = &outcome.unstable {
        eprintln!(
            "unstable truncation: dim ℍ¹ = {dim_n} at N = {n} but {dim_n2} at N = {}; rerun with --truncation {}",
            n + 2,
            n + 2
        );
    }
    outcome.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(passed: bool, unstable: Option<CechError>) -> Outcome {
        let check = Check::new("x", passed, serde_json::Value::Null);
        Outcome {
            report: Report::new(
                "test",
                ScenarioConfig::default(),
                vec![check],
                RunInfo::default(),
            ),
            unstable,
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(outcome(true, None).exit_code(), EXIT_PASS);
        assert_eq!(outcome(false, None).exit_code(), EXIT_FAIL);
        let unstable = CechError::UnstableTruncation {
            n: 4,
            dim_n: 7,
            dim_n2: 6,
        };
        assert_eq!(outcome(true, Some(unstable)).exit_code(), EXIT_UNSTABLE);
    }

    #[test]
    fn commands_map_to_suites() {
        let config = ScenarioConfig::default();
        assert_eq!(Command::All.suites(&config), Suite::ALL.to_vec());
        assert_eq!(Command::Goldman.suites(&config), vec![Suite::Goldman]);
        assert!(Command::DefaultConfig.suites(&config).is_empty());
    }
}
