use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use princ_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            let _ = writeln!(std::io::stdout().lock(), "{}", report.to_json(cli.global.compact));
            ExitCode::from(u8::from(report.negative))
        }
        Err(e) => {
            eprintln!("princ-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
