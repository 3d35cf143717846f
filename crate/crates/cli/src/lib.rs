//! Command line front end: parses arguments, runs one pipeline and renders
//! the resulting report.
//!
//! Exit status is 0 on success, 1 when the scenario or its judgments fail
//! validation (including a failed consistency gate or a game that is not
//! superadditive under `validate`), and 2 on usage errors or unreadable
//! input and output paths.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use valueshare::ahp::WeightMethod;
use valueshare::pipeline::{self, AllocateOptions};
use valueshare::report::{Format, ReportDocument};
use valueshare::{load_scenario, AdjustmentMode, Error, SamplingPlan};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "valueshare",
    version,
    about = "Classical and adjusted Shapley allocations for coalition scenarios"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Structured,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Csv => Format::Csv,
            FormatArg::Structured => Format::Structured,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Eq3,
    Grand,
}

impl From<ModeArg> for AdjustmentMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Eq3 => AdjustmentMode::PerCoalition,
            ModeArg::Grand => AdjustmentMode::GrandCoalition,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Default)]
enum MethodArg {
    #[default]
    Eigenvector,
    GeometricMean,
}

impl From<MethodArg> for WeightMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Eigenvector => WeightMethod::Eigenvector,
            MethodArg::GeometricMean => WeightMethod::GeometricMean,
        }
    }
}

#[derive(Debug, Args)]
struct ScenarioArg {
    /// Scenario file.
    scenario: PathBuf,
}

#[derive(Debug, Args)]
struct MethodOpts {
    /// How priority weights are derived from each comparison matrix.
    #[arg(long, value_enum, default_value_t = MethodArg::Eigenvector)]
    method: MethodArg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact classical Shapley allocation.
    Shapley(ScenarioArg),
    /// Classical and adjusted allocations with the efficiency gap.
    Allocate {
        #[command(flatten)]
        input: ScenarioArg,
        /// Adjustment mode; overrides the scenario's `mode`.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Rescale the factors to sum to 1 before computing deviations.
        #[arg(long)]
        normalize: bool,
        #[command(flatten)]
        method: MethodOpts,
        /// Accept AHP judgments that fail the consistency check.
        #[arg(long)]
        allow_inconsistent: bool,
    },
    /// AHP weights and factor synthesis.
    #[command(subcommand)]
    Ahp(AhpCommand),
    /// Monte Carlo permutation estimate of the Shapley value.
    Sample {
        #[command(flatten)]
        input: ScenarioArg,
        #[arg(long, value_name = "M", value_parser = clap::value_parser!(u64).range(1..))]
        permutations: u64,
        #[arg(long, value_name = "U64", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "K", default_value_t = SamplingPlan::DEFAULT_CHUNK_SIZE, value_parser = clap::value_parser!(u64).range(1..))]
        chunk_size: u64,
        /// Worker threads; the estimate does not depend on this.
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
        workers: Option<u16>,
    },
    /// Superadditivity check; exits 1 when any pair of coalitions violates it.
    Validate(ScenarioArg),
}

#[derive(Debug, Subcommand)]
enum AhpCommand {
    /// Priority weights and consistency of every comparison matrix.
    Weights {
        #[command(flatten)]
        input: ScenarioArg,
        #[command(flatten)]
        method: MethodOpts,
    },
    /// Per-player factors G synthesized across criteria.
    Synthesize {
        #[command(flatten)]
        input: ScenarioArg,
        #[command(flatten)]
        method: MethodOpts,
        #[arg(long)]
        allow_inconsistent: bool,
    },
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_io() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

fn execute(command: Command) -> Result<(ReportDocument, bool), Failure> {
    let load = |p: &PathBuf| load_scenario(p).map_err(|e| Failure::from(Error::from(e)));
    let doc = match command {
        Command::Shapley(a) => pipeline::classical(&load(&a.scenario)?)?,
        Command::Allocate {
            input,
            mode,
            normalize,
            method,
            allow_inconsistent,
        } => {
            let options = AllocateOptions {
                mode: mode.map(Into::into),
                normalize,
                method: method.method.into(),
                allow_inconsistent,
            };
            pipeline::allocate(&load(&input.scenario)?, &options)?
        }
        Command::Ahp(AhpCommand::Weights { input, method }) => {
            pipeline::ahp_weights(&load(&input.scenario)?, method.method.into())?
        }
        Command::Ahp(AhpCommand::Synthesize {
            input,
            method,
            allow_inconsistent,
        }) => pipeline::ahp_synthesize(
            &load(&input.scenario)?,
            method.method.into(),
            allow_inconsistent,
        )?,
        Command::Sample {
            input,
            permutations,
            seed,
            chunk_size,
            workers,
        } => {
            let plan = SamplingPlan {
                permutations,
                seed,
                chunk_size,
            };
            pipeline::sample(&load(&input.scenario)?, &plan, workers.map(usize::from))?
        }
        Command::Validate(a) => {
            let doc = pipeline::validate(&load(&a.scenario)?)?;
            let failed = doc.violations.as_ref().is_some_and(|v| !v.is_empty());
            return Ok((doc, failed));
        }
    };
    Ok((doc, false))
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };

    let (doc, failed) = match execute(cli.command) {
        Ok(result) => result,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_INVALID;
        }
    };

    let text = doc.render(cli.format.into());
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    if failed {
        EXIT_INVALID
    } else {
        EXIT_OK
    }
}
