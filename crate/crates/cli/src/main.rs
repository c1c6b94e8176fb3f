mod cli;
mod commands;

use clap::error::ErrorKind;
use clap::Parser;

use cli::{Cli, Command};

fn run(cli: &Cli) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Gen(args) => commands::gen(args),
        Command::Transform(args) => commands::transform_cmd(args),
        Command::Spectrum(args) => commands::spectrum(args),
        Command::Metrics(args) => commands::metrics(args),
        Command::Invariants(args) => commands::invariants(args),
        Command::Verify(args) => commands::verify(args),
    }
}

/// Exit codes: 0 success or all claims pass, 2 discrepancies found,
/// 1 usage or internal error.
fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}
