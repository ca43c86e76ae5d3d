use std::process::ExitCode;

use clap::Parser;

use dleit::args::Cli;
use dleit::config::expand_args;

fn main() -> ExitCode {
    let argv = match expand_args(std::env::args_os().collect()) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("dleit: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dleit::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dleit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
