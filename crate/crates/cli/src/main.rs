mod commands;
mod config;
mod error;
mod parse;

use std::process::ExitCode;

use clap::Parser;

use config::{Args, JobConfig, CAP_ENV};
use error::CliError;

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let result = JobConfig::resolve(args, std::env::var(CAP_ENV).ok()).and_then(|cfg| commands::run(&cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let kind = match &e {
                CliError::Parse(_) => "parse error",
                CliError::Precondition(_) | CliError::Io(_) => "precondition violated",
                CliError::Singular(_) => "numeric singularity",
            };
            eprintln!("cmnf: {kind}: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
