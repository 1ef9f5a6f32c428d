use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cli::{execute, Cli, CliError};

fn run(cli: &Cli) -> Result<bool, CliError> {
    let out = execute(&cli.command)?;
    let text = out.render(cli.format)?;
    match &cli.output {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => {
            // a closed pipe downstream is not our failure
            let mut out = std::io::stdout().lock();
            if let Err(e) = writeln!(out, "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(out.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
