use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use jsr::cli::{run, Cli, EXIT_ERROR};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            let text = outcome.report.trim_end();
            if writeln!(out, "{text}").is_err() {
                return ExitCode::from(EXIT_ERROR as u8);
            }
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            eprintln!("jsr: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
