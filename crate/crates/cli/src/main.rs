use std::process::ExitCode;

use clap::Parser;
use modalt_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match modalt_cli::run(&cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
