//! Front end of the `qwalk` binary.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;

pub use args::Cli;
pub use error::CliError;

/// Thread pools for the walk engine and the dense solvers.
pub fn configure_threads(threads: Option<usize>) -> Result<(), CliError> {
    let n = match threads {
        Some(0) => return Err(CliError::Config("--threads must be positive".into())),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))?;
    qwalk_entanglement::set_parallelism(n);
    Ok(())
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads(cli.common.threads)?;
    commands::dispatch(&cli.common, &cli.command)
}
