use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use zz_lattice_cli::{configure_threads, run, Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            eprintln!("{}", CliError::validation(first).report_line());
            eprint!("{msg}");
            return ExitCode::from(1);
        }
    };
    match configure_threads().and_then(|()| run(&cli)) {
        Ok(out) => {
            println!("{}", out.csv.display());
            println!("{}", out.json.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.report_line());
            ExitCode::from(e.code() as u8)
        }
    }
}
