use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    eulb_cli::main_with(eulb_cli::Cli::parse())
}
