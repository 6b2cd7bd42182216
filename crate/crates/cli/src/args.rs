//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qwalk_core::{CoinMatrix, CoinParameter, InitialCoinState, QwalkError};

use crate::error::CliError;
use crate::format::parse_complex_list;

#[derive(Debug, Parser)]
#[command(name = "qwalk", version, about = "Two-dimensional three-state quantum walk toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long, global = true, env = "QWALK_THREADS")]
    pub threads: Option<usize>,
    /// Named coin (only `grover` is known).
    #[arg(long, global = true, conflicts_with = "theta")]
    pub coin: Option<String>,
    /// Coin angle θ in [0, 2π).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// `rest`, `symmetric` or three complex amplitudes `a,b,c` (e.g. `0.6,0,0.8i`).
    #[arg(long, global = true, default_value = "rest", allow_hyphen_values = true)]
    pub initial: String,
    /// Rescale the initial amplitudes to unit norm.
    #[arg(long, global = true)]
    pub normalize: bool,
    /// Write the main output to a file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Probability distribution after a number of steps.
    Simulate {
        #[arg(long)]
        steps: usize,
    },
    /// Return probability P_t(0,0) against its long-time limit.
    ReturnProb {
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Sweep θ = 2πk/N, k = 1..N−1 (skipping π), at the final time.
        #[arg(long, value_name = "N")]
        sweep_theta: Option<usize>,
    },
    /// Continuous limit density on a square grid, with the point mass in JSON.
    LimitDensity {
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Path of the JSON summary; standard error when absent.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Negativity time series.
    Negativity {
        #[arg(long, value_enum, default_value_t = ModelChoice::Three)]
        model: ModelChoice,
        #[arg(long, value_enum, default_value_t = CutChoice::CoinPosition)]
        cut: CutChoice,
        #[arg(long, default_value_t = 30)]
        steps: usize,
        /// Largest time allowed for the dense x–y computation.
        #[arg(long, default_value_t = qwalk_entanglement::DEFAULT_DENSE_CAP)]
        cap: usize,
        /// Initial coin state of the four-state walk; (1/√2, 1/√2, 0, 0) by default.
        #[arg(long, allow_hyphen_values = true)]
        four_initial: Option<String>,
        /// Cross-check against the density-matrix route for t ≤ 5.
        #[arg(long)]
        verify: bool,
    },
    /// Empirical rescaled moment E[X^r1 Y^r2]/t^(r1+r2) against its limit.
    Moments {
        #[arg(long)]
        r1: u32,
        #[arg(long)]
        r2: u32,
        #[arg(long, default_value_t = 300)]
        steps: usize,
    },
    /// Compare the two integral representations of F(x, y).
    Fxy {
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: i64,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelChoice {
    Three,
    Four,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CutChoice {
    CoinPosition,
    Xy,
    Both,
}

impl Common {
    pub fn coin(&self) -> Result<CoinMatrix, CliError> {
        match (&self.coin, self.theta) {
            (_, Some(theta)) => Ok(CoinMatrix::new(CoinParameter::new(theta)?)),
            (Some(name), None) if name.eq_ignore_ascii_case("grover") => Ok(CoinMatrix::grover()),
            (Some(name), None) => Err(QwalkError::InvalidCoin(format!("unknown coin '{name}'")).into()),
            (None, None) => Ok(CoinMatrix::grover()),
        }
    }

    pub fn initial(&self) -> Result<InitialCoinState, CliError> {
        match self.initial.as_str() {
            "rest" => Ok(InitialCoinState::rest()),
            "symmetric" => Ok(InitialCoinState::symmetric()),
            list => {
                let v = amplitudes::<3>(list)?;
                let init = if self.normalize {
                    InitialCoinState::normalized(v[0], v[1], v[2])?
                } else {
                    InitialCoinState::new(v[0], v[1], v[2])?
                };
                Ok(init)
            }
        }
    }
}

/// Exactly `N` comma-separated complex amplitudes.
pub fn amplitudes<const N: usize>(list: &str) -> Result<[Complex64; N], CliError> {
    let v = parse_complex_list(list).map_err(CliError::Config)?;
    v.try_into()
        .map_err(|v: Vec<_>| CliError::Config(format!("expected {N} amplitudes, got {}", v.len())))
}
