use std::process::ExitCode;

use accretive_cli::commands::{run, Cli};
use accretive_cli::Failure;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            if let Failure::Input(msg) | Failure::Violation(msg) = &failure {
                eprintln!("accretive: {msg}");
            }
            println!("{}", failure.to_json());
            failure.exit_code()
        }
    }
}
