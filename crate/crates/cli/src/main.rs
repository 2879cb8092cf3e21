use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use sgkit_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("sgkit: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match cli.command.output() {
        Some(path) => std::fs::write(path, &outcome.output),
        None => std::io::stdout().write_all(outcome.output.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("sgkit: I/O error: {e}");
        return ExitCode::from(3);
    }
    ExitCode::from(outcome.exit_code as u8)
}
