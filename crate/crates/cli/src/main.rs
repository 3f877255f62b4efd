use std::io::Write;
use std::process::ExitCode;

use blob_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    // clap prints usage errors itself and exits with status 2.
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            match outcome.emit() {
                Ok(Some(s)) => {
                    let _ = std::io::stdout().write_all(s.as_bytes());
                }
                Ok(None) => {}
                Err(err) => {
                    eprintln!("error: {err:#}");
                    return ExitCode::from(1);
                }
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
