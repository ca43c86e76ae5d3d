//! Command-line front end for `dleit-core`: argument parsing, config
//! files, and CSV/JSON output.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use args::Cli;
use error::{CliError, CliResult};

/// Runs the parsed command and writes its report.
pub fn run(cli: &Cli) -> CliResult<()> {
    let report = match cli.threads {
        Some(0) => return Err(CliError::Config("threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(e.to_string()))?
            .install(|| commands::execute(&cli.command))?,
        None => commands::execute(&cli.command)?,
    };
    output::write_report(&report, cli.format, cli.out.as_deref())
}
