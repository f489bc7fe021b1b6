mod cli;
mod commands;
mod error;
mod verify;

use clap::Parser;
use cli::{Cli, Command};
use commands::Output;
use error::{CliError, CliResult};
use qcorr_core::exec::Execution;
use std::io::Write;
use std::process::ExitCode;

/// Caps the worker count from `QCORR_THREADS`.
fn configure_threads() -> CliResult<()> {
    let Ok(value) = std::env::var("QCORR_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Usage(format!("QCORR_THREADS=`{value}` is not a positive integer")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Failure(format!("thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn dispatch(command: &Command, exec: Execution) -> CliResult<Output> {
    match command {
        Command::Measure { state_file } => commands::measure(state_file),
        Command::Scatter { samples, seed } => commands::scatter(*samples, *seed, exec),
        Command::Dqc1 { mu_grid } => commands::dqc1(mu_grid, exec),
        Command::Plan { setting, d } => commands::plan(*setting, *d),
        Command::Verify { samples, seed } => commands::verify(*samples, *seed, exec),
        Command::Dynamics { channel } => commands::dynamics(channel, exec),
        Command::MaxGap { family } => commands::max_gap_cmd(family, exec),
        Command::Reconstruct { csv_file, d } => commands::reconstruct(csv_file, *d),
        Command::State { kind } => commands::state(kind),
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    configure_threads()?;
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let output = dispatch(&cli.command, exec)?;
    match cli.out.as_ref().or(output.default_path.as_ref()) {
        Some(path) => std::fs::write(path, &output.text).map_err(|e| CliError::io(path, e))?,
        None => std::io::stdout()
            .write_all(output.text.as_bytes())
            .map_err(|e| CliError::Failure(format!("stdout: {e}")))?,
    }
    Ok(!output.failed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
