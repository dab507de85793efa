use std::io::Write;
use std::process::ExitCode;

use bettibound_cli::{run, Cli, Config};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match Config::from_env().and_then(|config| run(&cli, &config)) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("bettibound: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
