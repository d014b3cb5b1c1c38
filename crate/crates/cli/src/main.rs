mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::EXIT_USAGE;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(a) => commands::check(a),
        Command::PaperExample => commands::paper_example(),
        Command::ScanP(a) => commands::scan_p(a),
        Command::Means(a) => commands::means(a),
        Command::Gen(a) => commands::gen(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {}", e.0);
        ExitCode::from(EXIT_USAGE)
    })
}
