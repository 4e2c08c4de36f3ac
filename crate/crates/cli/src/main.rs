use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use principalize::commands::{cmd_export_dot, cmd_run, cmd_verify};

/// Principalize sums of monomial ideals on divisor arrangements by
/// codimension-2 blow-ups.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the engine on an instance and write the trace.
    Run {
        instance: PathBuf,
        /// Write the trace here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Replay a trace through affine charts (toric instances only).
    /// The report goes to `<trace>.report.json`.
    Verify { instance: PathBuf, trace: PathBuf },
    /// Print the blow-up tower of a trace as a DOT graph.
    ExportDot {
        trace: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run {
            instance,
            out,
            max_steps,
        } => cmd_run(instance, out.as_deref(), *max_steps),
        Command::Verify { instance, trace } => cmd_verify(instance, trace),
        Command::ExportDot { trace, out } => cmd_export_dot(trace, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("principalize: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
