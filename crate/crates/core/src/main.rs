use std::io::{Read, Write};
use std::process::ExitCode;

use clap::Parser;
use diffalg::cli::command::{run, run_batch, Cli, Response, Verb};

fn main() -> ExitCode {
    let response = match Cli::try_parse() {
        Ok(cli) if matches!(cli.verb, Verb::Batch) => {
            let mut input = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut input) {
                eprintln!("error: cannot read standard input: {e}");
                return ExitCode::from(1);
            }
            run_batch(&input, cli.format, cli.seed)
        }
        Ok(cli) => run(&cli),
        Err(e) => e.exit(),
    };
    emit(&response)
}

fn emit(r: &Response) -> ExitCode {
    let _ = std::io::stdout().write_all(r.stdout.as_bytes());
    let _ = std::io::stderr().write_all(r.stderr.as_bytes());
    ExitCode::from(r.code as u8)
}
