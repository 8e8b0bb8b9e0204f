mod args;
mod commands;
mod error;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use error::CliError;

fn run(cli: &Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(CliError::internal)?;
    }
    let text = commands::dispatch(cli)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Lib(satotate::Error::Io { path: path.clone(), source: e })),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(CliError::internal),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("satotate: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
