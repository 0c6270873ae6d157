use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logsurf_cli::report::Status;
use logsurf_cli::{run_batch, run_file, scenario_files, Command, Options, Report};
use logsurf_core::bounds::Branch;
use logsurf_core::{parse_rational, Rational};

#[derive(Parser)]
#[command(name = "logsurf", version, about = "Exact checks for curves on log surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Zariski decomposition of `divisor`, absolute or supported on a cycle.
    Zariski {
        scenario: PathBuf,
        /// Comma-separated classes of the support cycle.
        #[arg(long, value_delimiter = ',')]
        support: Option<Vec<String>>,
        #[command(flatten)]
        common: Common,
    },
    /// Adjunction identity on the log resolution.
    Adjunction {
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Chern-number evaluators and the inequality chain.
    Bmy {
        scenario: PathBuf,
        #[arg(long, value_parser = parse_alpha, conflicts_with = "alpha_grid")]
        alpha: Option<Rational>,
        /// Evaluate at i/k for i = 0..=k.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=10_000))]
        alpha_grid: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Degree bound; branches are picked from the scenario unless given.
    Bound {
        scenario: PathBuf,
        #[arg(long, value_enum)]
        branch: Option<BranchArg>,
        #[command(flatten)]
        common: Common,
    },
    /// Contact-order bound for plane curves against two smooth curves.
    P2 {
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Every `*.json` scenario in a directory.
    Batch {
        dir: PathBuf,
        /// Command applied to every file; otherwise each file's `command`
        /// field, or a guess from its contents.
        #[arg(long = "command")]
        run: Option<String>,
        #[arg(long, value_delimiter = ',')]
        support: Option<Vec<String>>,
        #[arg(long, value_parser = parse_alpha, conflicts_with = "alpha_grid")]
        alpha: Option<Rational>,
        #[arg(long)]
        alpha_grid: Option<u32>,
        #[arg(long, value_enum)]
        branch: Option<BranchArg>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Working precision of square-root enclosures.
    #[arg(long, env = "LOGSURF_BITS", default_value_t = 64, value_parser = clap::value_parser!(u32).range(8..=4096))]
    bits: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    #[value(alias = "table")]
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    General,
    Smooth,
    DRational,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::General => Branch::General,
            BranchArg::Smooth => Branch::Smooth,
            BranchArg::DRational => Branch::DRational,
        }
    }
}

fn parse_alpha(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn emit(text: String, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn single(cmd: Command, path: &Path, opts: &Options, common: &Common) -> Result<i32, String> {
    let report: Report = run_file(cmd, path, opts);
    let text = match common.format {
        Format::Text => report.to_text(),
        Format::Json => serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n",
    };
    emit(text, common.out.as_deref())?;
    Ok(report.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Zariski { scenario, support, common } => {
            let opts = Options { bits: common.bits, support, ..Options::default() };
            single(Command::Zariski, &scenario, &opts, &common)
        }
        Cmd::Adjunction { scenario, common } => {
            let opts = Options { bits: common.bits, ..Options::default() };
            single(Command::Adjunction, &scenario, &opts, &common)
        }
        Cmd::Bmy { scenario, alpha, alpha_grid, common } => {
            let opts = Options { bits: common.bits, alpha, alpha_grid, ..Options::default() };
            single(Command::Bmy, &scenario, &opts, &common)
        }
        Cmd::Bound { scenario, branch, common } => {
            let opts = Options { bits: common.bits, branch: branch.map(Into::into), ..Options::default() };
            single(Command::Bound, &scenario, &opts, &common)
        }
        Cmd::P2 { scenario, common } => {
            let opts = Options { bits: common.bits, ..Options::default() };
            single(Command::P2, &scenario, &opts, &common)
        }
        Cmd::Batch { dir, run, support, alpha, alpha_grid, branch, common } => {
            batch(&dir, run.as_deref(), Options { bits: common.bits, support, alpha, alpha_grid, branch: branch.map(Into::into) }, &common)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("logsurf: {msg}");
            ExitCode::from(Status::InvalidInput.code() as u8)
        }
    }
}

fn batch(dir: &Path, run: Option<&str>, opts: Options, common: &Common) -> Result<i32, String> {
    let cmd = run
        .map(|c| Command::parse(c).ok_or_else(|| format!("unknown command `{c}`")))
        .transpose()?;
    let paths = scenario_files(dir).map_err(|e| format!("cannot list {}: {e}", dir.display()))?;
    let report = run_batch(&paths, cmd, &opts);
    let text = match common.format {
        Format::Text => report.to_text(),
        Format::Json => serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n",
    };
    emit(text, common.out.as_deref())?;
    Ok(report.exit_code)
}
