//! Subcommand implementations.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use qwalk_core::{initial_state, CoinMatrix, CoinParameter, FourStateSpec, InitialCoinState};
use qwalk_engine::{distribution, evolve, return_probability_series, FourStateWalk, ThreeStateWalk};
use qwalk_entanglement::{
    negativity_mixed, negativity_pure, negativity_series, negativity_xy, pure_density_operator,
    rho_xy, Bipartition, Subsystem, WalkModel,
};
use qwalk_limitlaws::{continuous_density, f_double, f_single, return_probability_limit, LimitDensity};
use qwalk_spectral::{empirical_moment, limit_moment};

use crate::args::{amplitudes, Command, Common, CutChoice, ModelChoice};
use crate::error::CliError;
use crate::format::decimal;

/// Half-width of the square sampled by `limit-density`.
pub const DENSITY_EXTENT: f64 = 1.05;
/// Allowed |Δ + m − 1| for the limit law.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-6;
/// Largest time checked by `negativity --verify`.
pub const VERIFY_MAX_TIME: usize = 5;
pub const VERIFY_TOLERANCE: f64 = 1e-10;
pub const FXY_MAX_COORDINATE: i64 = 10;

type Out = Box<dyn Write>;

/// Main output plus the stream for human-readable summaries.
struct Streams {
    main: Out,
    summary: Out,
}

impl Streams {
    fn open(path: Option<&Path>) -> Result<Self, CliError> {
        Ok(match path {
            Some(p) => Self {
                main: Box::new(BufWriter::new(File::create(p)?)),
                summary: Box::new(io::stdout()),
            },
            None => Self {
                main: Box::new(BufWriter::new(io::stdout().lock())),
                summary: Box::new(io::stderr()),
            },
        })
    }

    fn finish(mut self) -> Result<(), CliError> {
        self.main.flush()?;
        self.summary.flush()?;
        Ok(())
    }
}

pub fn dispatch(common: &Common, command: &Command) -> Result<(), CliError> {
    let coin = common.coin()?;
    let init = common.initial()?;
    let mut io = Streams::open(common.output.as_deref())?;
    match command {
        Command::Simulate { steps } => simulate(&mut io, &coin, &init, *steps)?,
        Command::ReturnProb { steps, sweep_theta: None } => return_prob(&mut io, &coin, &init, *steps)?,
        Command::ReturnProb { steps, sweep_theta: Some(n) } => sweep(&mut io, &init, *steps, *n)?,
        Command::LimitDensity { grid, json } => {
            let total = limit_density(&mut io, &coin, &init, *grid, json.as_deref())?;
            io.finish()?;
            if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
                return Err(CliError::Numerical(format!("Δ + mass = {} is not 1", decimal(total))));
            }
            return Ok(());
        }
        Command::Negativity { model, cut, steps, cap, four_initial, verify } => {
            let four = match four_initial {
                Some(list) => amplitudes::<4>(list)?,
                None => [FRAC_1_SQRT_2.into(), FRAC_1_SQRT_2.into(), Complex64::ZERO, Complex64::ZERO],
            };
            let four = if common.normalize { normalize4(four)? } else { four };
            let models = models(*model, &coin, &init, four)?;
            let cuts = cuts(*cut);
            negativity(&mut io, &models, &cuts, *steps, *cap)?;
            if *verify {
                for m in &models {
                    for &c in &cuts {
                        verify_negativity(m, c, (*steps).min(VERIFY_MAX_TIME), *cap)?;
                    }
                }
                writeln!(io.summary, "verify: ok for t <= {}", (*steps).min(VERIFY_MAX_TIME))?;
            }
        }
        Command::Moments { r1, r2, steps } => moments(&mut io, &coin, &init, *r1, *r2, *steps)?,
        Command::Fxy { x, y, tolerance } => {
            let diff = fxy(&mut io, &coin, *x, *y)?;
            io.finish()?;
            if diff.is_nan() || diff > *tolerance {
                return Err(CliError::Numerical(format!(
                    "representations differ by {} > {}",
                    decimal(diff),
                    decimal(*tolerance)
                )));
            }
            return Ok(());
        }
    }
    io.finish()
}

fn simulate(io: &mut Streams, coin: &CoinMatrix, init: &InitialCoinState, steps: usize) -> Result<(), CliError> {
    let state = evolve(&initial_state(init), coin, steps)?;
    let dist = distribution(&state);
    writeln!(io.main, "x,y,p")?;
    for (x, y, p) in dist.iter().filter(|&(_, _, p)| p > 0.0) {
        writeln!(io.main, "{x},{y},{}", decimal(p))?;
    }
    writeln!(io.summary, "total probability: {}", decimal(dist.total()))?;
    writeln!(io.summary, "P(0,0): {}", decimal(dist.get(0, 0)))?;
    Ok(())
}

fn return_prob(io: &mut Streams, coin: &CoinMatrix, init: &InitialCoinState, steps: usize) -> Result<(), CliError> {
    let limit = decimal(return_probability_limit(coin.parameter().theta(), init)?);
    writeln!(io.main, "t,p00,limit")?;
    for (t, p) in return_probability_series(&initial_state(init), coin, steps)? {
        writeln!(io.main, "{t},{},{limit}", decimal(p))?;
    }
    Ok(())
}

/// θ = 2πk/n for k = 1..n−1, omitting the degenerate angle π.
pub fn sweep_angles(n: usize) -> Vec<f64> {
    (1..n).filter(|&k| 2 * k != n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
}

fn sweep(io: &mut Streams, init: &InitialCoinState, steps: usize, n: usize) -> Result<(), CliError> {
    let angles = sweep_angles(n);
    if angles.is_empty() {
        return Err(CliError::Config("--sweep-theta needs at least 3 points".into()));
    }
    let start = initial_state(init);
    writeln!(io.main, "theta,p100,limit")?;
    for theta in angles {
        let coin = CoinMatrix::new(CoinParameter::new(theta)?);
        let mut walk = ThreeStateWalk::new(&start, coin, steps);
        for _ in 0..steps {
            walk.advance()?;
        }
        let limit = return_probability_limit(theta, init)?;
        writeln!(io.main, "{},{},{}", decimal(theta), decimal(walk.probability(0, 0)), decimal(limit))?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct DensitySummary {
    delta: f64,
    mass_continuous: f64,
    total: f64,
}

fn limit_density(
    io: &mut Streams,
    coin: &CoinMatrix,
    init: &InitialCoinState,
    grid: usize,
    json: Option<&Path>,
) -> Result<f64, CliError> {
    if grid < 2 {
        return Err(CliError::Config("--grid must be at least 2".into()));
    }
    let p = coin.parameter();
    let law = LimitDensity::new(p, *init);
    let delta = law.delta_mass();
    let mass = law.continuous_mass()?.value;
    let summary = DensitySummary { delta, mass_continuous: mass, total: delta + mass };

    let coord = |i: usize| -DENSITY_EXTENT + 2.0 * DENSITY_EXTENT * i as f64 / (grid - 1) as f64;
    writeln!(io.main, "x,y,f")?;
    for i in 0..grid {
        let x = coord(i);
        for j in 0..grid {
            let y = coord(j);
            let f = continuous_density(x, y, init, &p);
            writeln!(io.main, "{},{},{}", decimal(x), decimal(y), decimal(f))?;
        }
    }
    let text = serde_json::to_string_pretty(&summary)?;
    match json {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => writeln!(io.summary, "{text}")?,
    }
    Ok(summary.total)
}

fn normalize4(v: [Complex64; 4]) -> Result<[Complex64; 4], CliError> {
    let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if n == 0.0 {
        return Err(qwalk_core::QwalkError::ZeroState.into());
    }
    Ok(v.map(|a| a / n))
}

fn models(
    choice: ModelChoice,
    coin: &CoinMatrix,
    init: &InitialCoinState,
    four: [Complex64; 4],
) -> Result<Vec<WalkModel>, CliError> {
    let three = || WalkModel::ThreeState { coin: *coin, initial: *init };
    let four = || -> Result<WalkModel, CliError> { Ok(WalkModel::FourState(FourStateSpec::grover(four)?)) };
    Ok(match choice {
        ModelChoice::Three => vec![three()],
        ModelChoice::Four => vec![four()?],
        ModelChoice::Both => vec![three(), four()?],
    })
}

fn cuts(choice: CutChoice) -> Vec<Bipartition> {
    match choice {
        CutChoice::CoinPosition => vec![Bipartition::CoinPosition],
        CutChoice::Xy => vec![Bipartition::XY],
        CutChoice::Both => vec![Bipartition::CoinPosition, Bipartition::XY],
    }
}

pub fn cut_name(cut: Bipartition) -> &'static str {
    match cut {
        Bipartition::CoinPosition => "coin-position",
        Bipartition::XY => "xy",
    }
}

fn negativity(
    io: &mut Streams,
    models: &[WalkModel],
    cuts: &[Bipartition],
    steps: usize,
    cap: usize,
) -> Result<(), CliError> {
    writeln!(io.main, "t,model,cut,negativity")?;
    for m in models {
        for &cut in cuts {
            for (t, n) in negativity_series(m, cut, steps, cap)? {
                writeln!(io.main, "{t},{},{},{}", m.name(), cut_name(cut), decimal(n))?;
            }
        }
    }
    Ok(())
}

fn verify_negativity(model: &WalkModel, cut: Bipartition, steps: usize, cap: usize) -> Result<(), CliError> {
    fn check<const D: usize>(
        s: &qwalk_core::LatticeState<D>,
        cut: Bipartition,
        cap: usize,
    ) -> Result<(f64, f64), CliError> {
        Ok(match cut {
            Bipartition::CoinPosition => {
                (negativity_pure(s)?, negativity_mixed(&pure_density_operator(s)?, Subsystem::Second)?)
            }
            Bipartition::XY => (negativity_xy(s, cap)?, negativity_mixed(&rho_xy(s, cap)?, Subsystem::Second)?),
        })
    }
    let mut pairs = Vec::with_capacity(steps + 1);
    match model {
        WalkModel::ThreeState { coin, initial } => {
            let mut walk = ThreeStateWalk::new(&initial_state(initial), *coin, steps);
            pairs.push((0, check(&walk.state(), cut, cap)?));
            for _ in 0..steps {
                walk.advance()?;
                pairs.push((walk.time(), check(&walk.state(), cut, cap)?));
            }
        }
        WalkModel::FourState(spec) => {
            let mut walk = FourStateWalk::new(spec, steps);
            pairs.push((0, check(&walk.state(), cut, cap)?));
            for _ in 0..steps {
                walk.advance()?;
                pairs.push((walk.time(), check(&walk.state(), cut, cap)?));
            }
        }
    }
    for (t, (a, b)) in pairs {
        if (a - b).abs() > VERIFY_TOLERANCE {
            return Err(CliError::Numerical(format!(
                "{} {} negativity at t={t}: {} vs density-matrix {}",
                model.name(),
                cut_name(cut),
                decimal(a),
                decimal(b)
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct MomentReport {
    r1: u32,
    r2: u32,
    empirical: f64,
    limit: f64,
    t: usize,
}

fn moments(
    io: &mut Streams,
    coin: &CoinMatrix,
    init: &InitialCoinState,
    r1: u32,
    r2: u32,
    steps: usize,
) -> Result<(), CliError> {
    if steps == 0 && r1 + r2 > 0 {
        return Err(CliError::Config("rescaled moments need --steps >= 1".into()));
    }
    let limit = limit_moment(r1, r2, coin, init)?.value;
    let dist = distribution(&evolve(&initial_state(init), coin, steps)?);
    let empirical = empirical_moment(&dist, r1, r2, true);
    let report = MomentReport { r1, r2, empirical, limit, t: steps };
    writeln!(io.main, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(())
}

fn fxy(io: &mut Streams, coin: &CoinMatrix, x: i64, y: i64) -> Result<f64, CliError> {
    if x.abs() > FXY_MAX_COORDINATE || y.abs() > FXY_MAX_COORDINATE {
        return Err(CliError::Config(format!("|x|, |y| must not exceed {FXY_MAX_COORDINATE}")));
    }
    let p = coin.parameter();
    let double = f_double(x, y, &p)?.value.value;
    let single = f_single(x, y, &p)?.value;
    let diff = (double - single).abs();
    writeln!(io.main, "double: {}", decimal(double))?;
    writeln!(io.main, "single: {}", decimal(single))?;
    writeln!(io.main, "difference: {}", decimal(diff))?;
    Ok(diff)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_grid_avoids_degenerate_angles() {
        let a = sweep_angles(52);
        assert_eq!(a.len(), 50);
        assert!(a.iter().all(|&t| t > 0.0 && t < 2.0 * PI && (t - PI).abs() > 1e-3));
        assert!(a.iter().any(|&t| (t - PI / 2.0).abs() < 1e-15));
        assert_eq!(sweep_angles(5).len(), 4);
        assert!(sweep_angles(2).is_empty());
    }
}
