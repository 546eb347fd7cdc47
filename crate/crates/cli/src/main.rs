mod args;
mod commands;

use std::process::ExitCode;

use args::{Cli, Command, Format};
use clap::Parser;
use commands::{CliError, Outcome};

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Verify { source } => commands::verify(source),
        Command::Analyze(a) => commands::analyze(a),
        Command::Dims(a) => commands::dims(a),
        Command::Search(a) => commands::search(a),
        Command::Transform { source, element, out } => commands::transform(source, element, out),
        Command::Equal { a, b } => commands::equal(a, b),
        Command::Serve(a) => commands::serve(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Human => print!("{}", out.human),
                Format::Records => {
                    for r in &out.records {
                        println!("{r}");
                    }
                }
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            match cli.format {
                Format::Human => eprintln!("error: {}", e.message()),
                Format::Records => {
                    println!("{}", serde_json::json!({"error": e.message(), "exit_code": e.code()}));
                    eprintln!("error: {}", e.message());
                }
            }
            ExitCode::from(e.code())
        }
    }
}
