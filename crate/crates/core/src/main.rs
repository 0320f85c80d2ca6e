use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use harmonia::cli::{self, Cli, EXIT_INVALID};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli::execute(&cli) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("harmonia: {err}");
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    let written = match cli::output_path(&cli.common, &outcome) {
        Some(path) => std::fs::write(&path, &outcome.body)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(outcome.body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("harmonia: {msg}");
        return ExitCode::from(EXIT_INVALID as u8);
    }
    ExitCode::from(outcome.exit_code as u8)
}
