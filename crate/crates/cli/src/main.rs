use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sp4_cli::{describe, exit_code, run_file, seed_from_env, RunOptions, REPORT_FILE};

#[derive(Parser)]
#[command(
    name = "sp4lr",
    version,
    about = "Verify LR invariants and Dyson maps of PT-symmetric coupled oscillators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write report.json plus CSV plot data.
    Run {
        /// Scenario file (JSON).
        #[arg(long, required_unless_present = "describe")]
        config: Option<PathBuf>,
        /// Output directory; overrides the scenario's output_dir.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the scenario schema with defaults and exit.
        #[arg(long)]
        describe: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let Command::Run {
        config,
        out,
        describe: want_schema,
    } = cli.command;
    if want_schema {
        println!("{}", describe());
        return ExitCode::SUCCESS;
    }
    let config = config.expect("clap enforces --config");
    let result =
        seed_from_env().and_then(|seed| run_file(&config, &RunOptions { out_dir: out, seed }));
    match result {
        Ok(report) => {
            for c in &report.checks {
                let tag = if c.passed() { "PASS" } else { "FAIL" };
                println!(
                    "{tag} {:<40} residual {:.3e} tolerance {:.3e}",
                    c.name, c.residual, c.tolerance
                );
            }
            for d in report.diagnostics.iter().filter(|d| d.flagged) {
                println!("FLAG {:<40} value {:.3e}  {}", d.name, d.value, d.note);
            }
            let failed = report.failed_checks().count();
            println!(
                "{} checks, {} failed; report in {}",
                report.checks.len(),
                failed,
                REPORT_FILE
            );
            ExitCode::from(exit_code(&report) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
