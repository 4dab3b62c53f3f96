use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = phe_cli::Cli::parse();
    let stdout = std::io::stdout();
    match phe_cli::run(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("phe: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
