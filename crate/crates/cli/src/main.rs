use std::process::ExitCode;

use clap::Parser;
use mindyn_cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match mindyn_cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
