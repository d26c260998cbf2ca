mod args;
mod commands;
mod csv;
mod error;
mod figures;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn run(argv: Vec<String>) -> Result<(), CliError> {
    let argv = args::expand_config(argv)?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return Ok(());
        }
        Err(e) => {
            let msg = e.to_string();
            let msg = msg.strip_prefix("error: ").unwrap_or(&msg).to_string();
            return Err(CliError::Usage(msg));
        }
    };
    match &cli.command {
        Command::Scan(a) => commands::scan(a),
        Command::Period(a) => commands::period(a),
        Command::Verify(a) => commands::verify(a),
        Command::Figure(a) => commands::figure(a),
    }
}

fn main() {
    if let Err(e) = run(std::env::args().collect()) {
        eprintln!("djc: {}", e.to_string().trim_end());
        std::process::exit(e.exit_code());
    }
}
