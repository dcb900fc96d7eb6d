mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(cli.global.log_level())
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .init();

    if let Some(n) = cli.global.threads {
        if let Err(e) = commands::set_threads(n) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }

    let result = match &cli.command {
        Command::Ingest(a) => commands::ingest(&cli.global, a),
        Command::Fit(a) => commands::fit(&cli.global, a),
        Command::Residuals(a) => commands::residuals(&cli.global, a),
        Command::Copula(a) => commands::copula(&cli.global, a),
        Command::Tail(a) => commands::tail(&cli.global, a),
        Command::Report(a) => commands::report(&cli.global, a),
        Command::Simulate(a) => commands::simulate(&cli.global, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(CliError::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
