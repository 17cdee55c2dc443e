use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lmhs_cli::{
    cmd_ddbar, cmd_distance, cmd_e1, cmd_polarization, cmd_report, cmd_validate, ReportFormat,
};

/// Limiting mixed Hodge structures of semistable degenerations.
///
/// SOURCE is an instance JSON file or one of `builtin:hashimoto-sano?a=N`,
/// `builtin:conifold`, `builtin:two-quadrics`, `builtin:jordan-block?d=N`.
#[derive(Parser)]
#[command(name = "lmhs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every instance invariant.
    Validate { source: String },
    /// E1 complexes and graded dimensions feeding H^m.
    E1 {
        source: String,
        #[arg(long, default_value_t = 3)]
        m: i64,
    },
    /// Distance index and finite/infinite classification.
    Distance { source: String },
    /// Top-wedge test for the ddbar-lemma on the nearby fiber.
    Ddbar { source: String },
    /// Hodge-Riemann positivity of the nearby weight-3 structure.
    Polarization { source: String },
    /// Full report.
    Report {
        source: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json", value_parser = ["json", "md"])]
        format: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Validate { source } => cmd_validate(source),
        Command::E1 { source, m } => cmd_e1(source, *m),
        Command::Distance { source } => cmd_distance(source),
        Command::Ddbar { source } => cmd_ddbar(source),
        Command::Polarization { source } => cmd_polarization(source),
        Command::Report {
            source,
            out,
            format,
        } => format
            .parse::<ReportFormat>()
            .and_then(|f| cmd_report(source, out.as_deref(), f)),
    };
    match result {
        Ok(outcome) => {
            let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
            let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
