mod args;
mod commands;
mod error;
mod output;

use clap::Parser;

use args::Cli;

const THREADS_ENV: &str = "SATOTATE_THREADS";

fn thread_count(flag: usize) -> Result<usize, error::CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| error::CliError::Usage(format!("{THREADS_ENV}={v} is not a thread count"))),
        Err(_) => Ok(flag),
    }
}

fn run(cli: Cli) -> Result<(), error::CliError> {
    let threads = thread_count(cli.threads)?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| error::CliError::Usage(e.to_string()))?;
    }
    commands::dispatch(cli.command)
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
