use std::io::Write;
use std::process::ExitCode;

use bjorling_cli::error::EXIT_VALIDATION;
use bjorling_cli::{execute, Cli, CliError, RunConfig};
use clap::error::ErrorKind;
use clap::Parser;

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_VALIDATION as u8);
        }
    };
    let cfg = match RunConfig::resolve(cli) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    match execute(&cfg) {
        Ok(out) => {
            if let (Some(r), None) = (&out.report, &cfg.report) {
                let mut stdout = std::io::stdout().lock();
                let _ = stdout.write_all(r.to_json().as_bytes());
            }
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => fail(&e),
    }
}
