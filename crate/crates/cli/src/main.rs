mod args;
mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use aperylift_core::algebraicity::AlgebraicityError;
use aperylift_core::cache::{CacheError, SequenceCache};
use aperylift_core::lift::LiftError;
use aperylift_core::series::SeriesError;
use aperylift_core::RecurrenceError;

use args::{Cli, Command};
use commands::Context;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verification(String),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Algebraicity(#[from] AlgebraicityError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("output: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_)
            | CliError::Cache(CacheError::Corrupt { .. })
            | CliError::Series(SeriesError::TailCertificate { .. }) => 2,
            _ => 1,
        }
    }
}

fn run(cli: &Cli) -> Result<output::Artifact, CliError> {
    let cache = if cli.no_cache {
        None
    } else {
        let dir = cli.cache_dir.clone().unwrap_or_else(|| std::env::temp_dir().join("aperylift-cache"));
        Some(SequenceCache::new(dir))
    };
    let ctx = Context { cache, digits: cli.digits };
    match &cli.command {
        Command::Apery(a) => commands::apery(&ctx, a),
        Command::Propagate(a) => commands::propagate_cmd(&ctx, a),
        Command::Lift(a) => commands::lift(&ctx, a),
        Command::Degree(a) => commands::degree(&ctx, a),
        Command::Criterion(a) => commands::criterion(&ctx, a),
        Command::Series(a) => commands::series(&ctx, a),
        Command::VerifyAll(a) => commands::verify(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let artifact = match run(&cli) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let mut out = io::stdout().lock();
    if let Err(e) = artifact.write(cli.emit, &mut out).and_then(|_| Ok(out.flush()?)) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match &artifact.failure {
        Some(msg) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
        None => ExitCode::SUCCESS,
    }
}
