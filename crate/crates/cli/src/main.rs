mod args;
mod atoms;
mod commands;
mod error;
mod output;
mod series;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;

fn one_line(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                e.exit()
            }
            _ => {
                let text = e.to_string();
                let head: Vec<&str> = text.lines().take_while(|l| !l.starts_with("Usage:")).collect();
                eprintln!("error: USAGE: {}", one_line(head.join(" ").trim_start_matches("error:")));
                return ExitCode::from(2);
            }
        },
    };
    let start = Instant::now();
    let result = commands::dispatch(&cli).and_then(|bytes| output::write_output(cli.out.as_deref(), &bytes));
    match result {
        Ok(()) => {
            eprintln!(
                "bifree: {} finished in {:.2}s",
                commands::command_name(&cli.command),
                start.elapsed().as_secs_f64()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {}", e.code(), one_line(&e.to_string()));
            ExitCode::from(1)
        }
    }
}
