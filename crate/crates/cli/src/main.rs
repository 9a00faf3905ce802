mod args;
mod commands;
mod config;
mod error;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use error::{CliError, CliResult};

fn emit(body: &str, out: Option<&std::path::Path>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Internal(format!("cannot write to stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::execute(&cli.command, cli.config.as_deref(), cli.format)
        .and_then(|body| emit(&body, cli.out.as_deref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
