mod commands;
mod output;

use clap::Parser;
use std::io::Write;
use std::process::ExitCode;

use commands::{Cli, CliError};

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("CWWR_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::Param(format!("CWWR_THREADS must be a positive integer, got {v:?}")))?;
        if n == 0 {
            return Err(CliError::Param("CWWR_THREADS must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Param(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let start = std::time::Instant::now();
    let mut out = commands::execute(&cli.command)?;
    if cli.record_time {
        out.set_wall_clock(start.elapsed().as_secs_f64());
    }
    match &cli.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            out.write(&mut f)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            out.write(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
