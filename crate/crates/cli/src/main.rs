use std::process::ExitCode;

use clap::Parser;
use scf_cli::args::Cli;
use scf_cli::{run, CliError, OutputFormat};

fn fail(err: CliError) -> ExitCode {
    eprintln!("{}", err.to_json());
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let config = match Cli::parse().into_config() {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    match run(&config) {
        Ok(report) => {
            match config.output {
                OutputFormat::Json => println!("{}", report.to_json()),
                OutputFormat::Text => println!("{}", report.render_text()),
            }
            ExitCode::from(report.outcome.exit_code() as u8)
        }
        Err(e) => fail(e),
    }
}
