use std::process::ExitCode;

use clap::Parser;
use virial_cli::{main_with, Cli};

fn main() -> ExitCode {
    match Cli::try_parse() {
        Ok(cli) => main_with(&cli),
        Err(e) => {
            let _ = e.print();
            // exit code 2 is reserved for counterexamples
            ExitCode::from(if e.use_stderr() { 1 } else { 0 })
        }
    }
}
