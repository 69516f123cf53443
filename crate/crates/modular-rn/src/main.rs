use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use modular_rn::error::Error;
use modular_rn::harness::{self, ReportFormat};
use modular_rn::report::VerificationReport;
use modular_rn::weyl;

#[derive(Parser)]
#[command(
    name = "modular-rn",
    version,
    about = "Numerical checks for weight \
constructions and cocycle decompositions on block matrix algebras",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario file (JSON); for decompose, a sampled cocycle-path file.
    #[arg(long)]
    scenario: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Report format.
    #[arg(long, default_value = "text")]
    format: String,
    /// Override the scenario's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Default tolerance for identities without an explicit override.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario's identity suite, or one equivalence theorem.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Check one of the three equivalence theorems instead of the suite.
        #[arg(long)]
        theorem: Option<String>,
    },
    /// Residuals of a testbed scenario across grid refinements.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Smoothing-element diagnostics for a scenario.
    Smear {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Split a sampled unitary path into scaling and derivative parts.
    Decompose {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn apply_overrides(scenario: &mut harness::Scenario, common: &CommonArgs) {
    if let Some(seed) = common.seed {
        scenario.seed = seed;
    }
    if let Some(tol) = common.tol {
        scenario.tolerances.default = Some(tol);
    }
}

fn emit(report: &VerificationReport, common: &CommonArgs) -> Result<u8, Error> {
    let format: ReportFormat = common.format.parse()?;
    let text = harness::emit_report(report, format);
    match &common.report {
        Some(path) => std::fs::write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Verify { common, theorem } => {
            let mut scenario = harness::parse_scenario(&common.scenario)?;
            apply_overrides(&mut scenario, &common);
            let report = match &theorem {
                Some(kind) => {
                    let tol = common.tol.or(scenario.tolerances.default).unwrap_or(1e-8);
                    harness::run_theorem(scenario, kind.parse()?, tol)?
                }
                None => harness::run_suite(scenario)?,
            };
            emit(&report, &common)
        }
        Command::Sweep { common } => {
            let mut scenario = harness::parse_scenario(&common.scenario)?;
            apply_overrides(&mut scenario, &common);
            let harness::AlgebraSpec::Testbed { case, n, l_box } = scenario.algebra else {
                return Err(Error::InvalidArgument(
                    "sweep needs a testbed scenario".into(),
                ));
            };
            let n_list: Vec<usize> = [n / 2, n].into_iter().filter(|&k| k >= 16).collect();
            let l_list = [l_box / 2.0, l_box];
            let table = weyl::convergence_sweep(case, &n_list, &l_list)?;
            let text = serde_json::to_string_pretty(&table).map_err(Error::from)? + "\n";
            match &common.report {
                Some(path) => std::fs::write(path, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Smear { common } => {
            let mut scenario = harness::parse_scenario(&common.scenario)?;
            apply_overrides(&mut scenario, &common);
            scenario.suite = Some(vec![harness::SuiteId::Smearing]);
            let report = harness::run_suite(scenario)?;
            emit(&report, &common)
        }
        Command::Decompose { common } => {
            let (file, path) = harness::parse_cocycle_path(&common.scenario)?;
            let tol = common.tol.unwrap_or(1e-8);
            let report = harness::run_decompose(&file, &path, tol)?;
            emit(&report, &common)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // keep clap's help/version on stdout with success, usage errors
            // on stderr with code 2
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e @ Error::NumericalFailure(_)) => {
            eprintln!("numerical failure: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
