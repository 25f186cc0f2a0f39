//! `kronwebs` command-line front end.

mod input;
mod lie;
mod pairs;
mod relation;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{CliError, Output};

#[derive(Parser, Debug)]
#[command(name = "kronwebs", version, about = "Exact Kronecker analysis of skew pairs, linear relations and Lie–Poisson pencils")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input JSON file (`-` reads standard input).
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of sample points (each command has its own default).
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct LieArgs {
    #[command(flatten)]
    pub common: Common,
    /// Built-in table (sl2, sl3, gl2, gl3, so3) instead of --input.
    #[arg(long, conflicts_with = "input")]
    pub algebra: Option<String>,
    /// Comma-separated coordinates of c₁, overriding the input's.
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical block decomposition of a pair of skew forms.
    PairDecompose(Common),
    /// Action subspace of a micro-Kronecker pair.
    PairAction(Common),
    /// Rebuild a relation from its kernels at finitely many points.
    RelationReconstruct(Common),
    /// Kronecker test, exceptional set, filtration and block splitting of a relation or pencil.
    RelationAnalyze(Common),
    /// Validate a Lie algebra and its optional c₁, invariants and anti-involution.
    LieValidate(LieArgs),
    /// Micro-Kronecker scan of the argument-translation pencil at seeded points.
    LieScan(LieArgs),
    /// Casimir web of the translation pencil.
    LieWeb(LieArgs),
    /// Run the acceptance suite.
    Selftest {
        #[command(flatten)]
        common: Common,
        /// Run a single criterion (1–10).
        #[arg(long)]
        only: Option<usize>,
    },
}

fn run(cmd: Command) -> Result<(Common, Output), CliError> {
    Ok(match cmd {
        Command::PairDecompose(c) => {
            let out = pairs::decompose_cmd(&c)?;
            (c, out)
        }
        Command::PairAction(c) => {
            let out = pairs::action_cmd(&c)?;
            (c, out)
        }
        Command::RelationReconstruct(c) => {
            let out = relation::reconstruct_cmd(&c)?;
            (c, out)
        }
        Command::RelationAnalyze(c) => {
            let out = relation::analyze_cmd(&c)?;
            (c, out)
        }
        Command::LieValidate(a) => {
            let out = lie::validate_cmd(&a)?;
            (a.common, out)
        }
        Command::LieScan(a) => {
            let out = lie::scan_cmd(&a)?;
            (a.common, out)
        }
        Command::LieWeb(a) => {
            let out = lie::web_cmd(&a)?;
            (a.common, out)
        }
        Command::Selftest { common, only } => {
            let out = report::selftest_cmd(&common, only)?;
            (common, out)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command).and_then(|(common, out)| out.emit(&common).map(|()| out.verified)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("kronwebs: verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("kronwebs: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
