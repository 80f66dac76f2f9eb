mod commands;
mod config;
mod error;

use std::process::ExitCode;

use clap::Parser;

use config::{Args, Command, RunConfig};

fn main() -> ExitCode {
    let args = Args::parse();
    let result = RunConfig::from_args(args).and_then(|cfg| match cfg.command {
        Command::Apply => commands::cmd_apply(&cfg),
        Command::Sweep => commands::cmd_sweep(&cfg),
        Command::Nls => commands::cmd_nls(&cfg),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fraclap: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
