mod args;
mod commands;
mod csv;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("REVIVAL_LOG", "error")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Polylog(a) => commands::polylog(&a),
        Command::Profile(a) => commands::profile(&a),
        Command::Compare(a) => commands::compare(&a),
        Command::Kernel(a) => commands::kernel(&a),
        Command::Verify(a) => commands::verify(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
