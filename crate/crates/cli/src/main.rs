use std::process::ExitCode;

use clap::Parser;
use psc_cli::{run_cli, Cli};

fn main() -> ExitCode {
    let result = Cli::parse().into_manifest().and_then(|m| run_cli(&m));
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("psc-sim: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
