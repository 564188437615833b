mod args;
mod commands;
mod elements;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::RunConfig;
use error::CliError;
use output::emit;

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig {
        instance: cli.instance,
        level: cli.level,
        beta: cli.beta,
        seed: cli.seed,
    };
    cfg.validate()?;
    let out = cli.out.as_deref();
    match cli.command {
        Command::Distances => emit(&commands::distances(&cfg)?, cli.format, out),
        Command::Domain { element } => emit(&commands::domain(&cfg, &element)?, cli.format, out),
        Command::Seminorm { element } => {
            emit(&commands::seminorm(&cfg, &element)?, cli.format, out)
        }
        Command::Verify { suite } => {
            let report = commands::verify(&cfg, suite)?;
            emit(&report, cli.format, out)?;
            match report.failures() {
                0 => Ok(()),
                failed => Err(CliError::VerificationFailed {
                    failed,
                    total: report.total(),
                }),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
