use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cbp_core::report::Section;
use cbp_core::{parse_model, render, run_pipeline, Format};

/// Identify core business processes and plan the current release from a
/// JSON analysis model.
#[derive(Parser)]
#[command(name = "cbp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format: text or json.
    #[arg(long, global = true, default_value = "text")]
    format: Format,

    /// Absolute high/low priority threshold in (0, 1]; overrides the model.
    #[arg(long, global = true)]
    threshold: Option<f64>,

    /// Dependency strength at which processes merge, in (0, 1]; overrides the model.
    #[arg(long = "merge-threshold", global = true)]
    merge_threshold: Option<f64>,

    /// Number of units in the current release; overrides the model.
    #[arg(long, global = true)]
    capacity: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the model and list every violation.
    Validate { file: PathBuf },
    /// Goal and process priorities.
    Prioritize { file: PathBuf },
    /// Decision-table classification of every process.
    Classify { file: PathBuf },
    /// Dependency groups, merged units and the current release.
    Plan { file: PathBuf },
    /// Every section.
    Report { file: PathBuf },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Validate { file }
            | Command::Prioritize { file }
            | Command::Classify { file }
            | Command::Plan { file }
            | Command::Report { file } => file,
        }
    }

    fn sections(&self) -> &'static [Section] {
        use Section::*;
        match self {
            Command::Validate { .. } => &[Validation],
            Command::Prioritize { .. } => &[Validation, Priorities],
            Command::Classify { .. } => &[Validation, Priorities, Classifications],
            Command::Plan { .. } => &[Validation, Plan],
            Command::Report { .. } => &[Validation, Priorities, Classifications, Plan],
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let mut model = match parse_model(cli.command.file()) {
        Ok(model) => model,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    if let Some(t) = cli.threshold {
        model.config.priority_threshold = Some(t);
    }
    if let Some(t) = cli.merge_threshold {
        model.config.merge_threshold = Some(t);
    }
    if let Some(c) = cli.capacity {
        model.config.capacity = Some(c);
    }

    let report = run_pipeline(&model).restricted(cli.command.sections());
    print!("{}", render(&report, cli.format));
    ExitCode::from(report.exit_code() as u8)
}
