use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use limit2::cli::{run, CliRequest, EXIT_INPUT};

fn main() -> ExitCode {
    let req = match CliRequest::try_parse() {
        Ok(r) => r,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let out = run(&req);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
