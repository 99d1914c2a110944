mod commands;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rr_core::groebner::Budget;
use rr_core::polyring::MonomialOrder;
use rr_core::Error;

use commands::{PipelineArgs, Source};
use output::{Format, Output};

const EXIT_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Exact correction-term combinatorics and the thickened-diagonal experiment.
#[derive(Parser, Debug)]
#[command(name = "rr", version)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Shorthand for `--format json`
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every exact identity suite
    Verify {
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Prefix signs and tail weights of the correction term
    Gti {
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 0)]
        lambda: usize,
    },
    /// Signed Stirling numbers of the first kind
    Stirling {
        #[arg(long, default_value_t = 10)]
        max: usize,
    },
    /// Euler numbers E_j of 2/(e^t + 1)
    EulerNumbers {
        #[arg(long, default_value_t = 20)]
        max: usize,
    },
    /// Hilbert series, Hilbert polynomial and χ of an `.ideal` file
    Hilbert {
        ideal: PathBuf,
        #[arg(long, default_value = "grevlex")]
        order: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// The thickened-diagonal experiment from a curve, P¹×P¹ or an imported χ table
    DiagonalExample(DiagonalArgs),
    /// The GTI pipeline on a χ table (JSON) or a scenario file
    ChiPipeline {
        input: PathBuf,
        #[command(flatten)]
        common: PipelineCommon,
    },
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Per-computation time budget in seconds
    #[arg(long, default_value_t = 900.0)]
    budget: f64,
    /// Remove the time budget
    #[arg(long)]
    full: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Result<Budget, String> {
        if self.full {
            return Ok(Budget::unlimited());
        }
        if !(self.budget.is_finite() && self.budget > 0.0) {
            return Err(format!(
                "--budget must be a positive number of seconds, got {}",
                self.budget
            ));
        }
        Ok(Budget::with_time(self.budget))
    }
}

#[derive(Args, Debug)]
struct PipelineCommon {
    #[arg(long, default_value_t = 10)]
    max_n: u32,
    #[arg(long, default_value_t = 1)]
    delta: usize,
    /// Largest λ to report
    #[arg(long)]
    lambda_max: Option<usize>,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Cache directory for per-n results
    #[arg(long, env = "RR_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(id = "source", multiple = false)]
struct SourceArgs {
    /// Curve generators in P², comma separated
    #[arg(long, group = "source")]
    curve: Option<String>,
    /// The smooth P¹ × P¹ oracle
    #[arg(long, group = "source")]
    p1p1: bool,
    /// χ table in the import format
    #[arg(long, group = "source")]
    import: Option<PathBuf>,
    /// Scenario file (`.ideal` with a `[scenario]` header)
    #[arg(long, group = "source")]
    scenario: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DiagonalArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Curve variables
    #[arg(long, default_value = "x y z")]
    vars: String,
    /// Characteristic of the coefficient field
    #[arg(long = "char", default_value_t = 5)]
    characteristic: u64,
    #[command(flatten)]
    common: PipelineCommon,
}

enum Failure {
    Usage(String),
    Check(String),
    Budget(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExhausted { .. } => Failure::Budget(e.to_string()),
            Error::CheckFailed(_) => Failure::Check(e.to_string()),
            Error::Parse { .. }
            | Error::InvalidInput(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::NotPrime(_)
            | Error::CharacteristicTwo
            | Error::OutOfRange(_) => Failure::Usage(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

fn pipeline_args(source: Source, common: &PipelineCommon) -> Result<PipelineArgs, Failure> {
    if common.max_n == 0 {
        return Err(Failure::Usage("--max-n must be at least 1".into()));
    }
    if source.characteristic() == Some(2) {
        return Err(Failure::Usage(
            "characteristic 2 is not allowed: 2 must be invertible".into(),
        ));
    }
    Ok(PipelineArgs {
        source,
        n_max: common.max_n,
        delta: common.delta,
        lambda_max: common.lambda_max,
        budget: common.budget.budget().map_err(Failure::Usage)?,
        cache_dir: common.cache_dir.clone(),
    })
}

fn run_pipeline(args: PipelineArgs) -> Result<(Output, u8), Failure> {
    let (out, complete) = commands::pipeline(&args)?;
    Ok((out, if complete { 0 } else { EXIT_BUDGET }))
}

fn run(cli: &Cli) -> Result<(Output, u8), Failure> {
    match &cli.command {
        Command::Verify { inject_fault } => {
            let (out, pass) = verify::run(*inject_fault)?;
            if let Some((name, why)) = verify::first_failure(&out) {
                eprintln!("rr: suite {name} failed: {why}");
            }
            Ok((out, if pass { 0 } else { EXIT_CHECK }))
        }
        Command::Gti { delta, lambda } => Ok((commands::gti(*delta, *lambda), 0)),
        Command::Stirling { max } => Ok((commands::stirling(*max), 0)),
        Command::EulerNumbers { max } => Ok((commands::euler(*max), 0)),
        Command::Hilbert {
            ideal,
            order,
            budget,
        } => {
            let order: MonomialOrder = order.parse()?;
            let budget = budget.budget().map_err(Failure::Usage)?;
            Ok((commands::hilbert(ideal, order, &budget)?, 0))
        }
        Command::DiagonalExample(d) => {
            let s = &d.source;
            let source = if let Some(curve) = &s.curve {
                Source::Curve {
                    vars: d.vars.split_whitespace().map(str::to_string).collect(),
                    generators: commands::split_curve(curve),
                    characteristic: d.characteristic,
                }
            } else if s.p1p1 {
                Source::P1xP1 {
                    characteristic: d.characteristic,
                }
            } else if let Some(path) = &s.import {
                Source::Import(path.clone())
            } else if let Some(path) = &s.scenario {
                Source::from_scenario_file(path)?
            } else {
                return Err(Failure::Usage(
                    "one of --curve, --p1p1, --import or --scenario is required".into(),
                ));
            };
            run_pipeline(pipeline_args(source, &d.common)?)
        }
        Command::ChiPipeline { input, common } => {
            run_pipeline(pipeline_args(commands::source_from_path(input)?, common)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json { Format::Json } else { cli.format };
    match run(&cli) {
        Ok((out, code)) => {
            out.emit(format);
            ExitCode::from(code)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("rr: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Check(m)) | Err(Failure::Other(m)) => {
            eprintln!("rr: {m}");
            ExitCode::from(EXIT_CHECK)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("rr: {m}");
            ExitCode::from(EXIT_BUDGET)
        }
    }
}
