//! Four-state walk: coin, then one simultaneous shift.

use num_complex::Complex64;
use rayon::prelude::*;

use qwalk_core::{FourStateSpec, FourWalkState, LatticeState, LatticeWindow, QwalkError, Result};

use crate::Distribution2D;

const ZERO: [Complex64; 4] = [Complex64::new(0.0, 0.0); 4];

#[derive(Debug, Clone)]
pub struct FourStateWalk {
    coin: [[f64; 4]; 4],
    time: usize,
    window: LatticeWindow,
    amplitudes: Vec<[Complex64; 4]>,
    scratch: Vec<[Complex64; 4]>,
}

impl FourStateWalk {
    pub fn new(spec: &FourStateSpec, steps: usize) -> Self {
        Self::exact(spec.initial_state(steps), *spec.coin())
    }

    pub fn exact(state: FourWalkState, coin: [[f64; 4]; 4]) -> Self {
        let (time, window, amplitudes) = state.into_parts();
        let scratch = vec![ZERO; amplitudes.len()];
        Self { coin, time, window, amplitudes, scratch }
    }

    pub fn time(&self) -> usize {
        self.time
    }

    pub fn probability(&self, x: i64, y: i64) -> f64 {
        self.window
            .index(x, y)
            .map_or(0.0, |i| self.amplitudes[i].iter().map(|a| a.norm_sqr()).sum())
    }

    pub fn state(&self) -> FourWalkState {
        LatticeState::from_parts(self.time, self.window, self.amplitudes.clone())
    }

    pub fn into_state(self) -> FourWalkState {
        LatticeState::from_parts(self.time, self.window, self.amplitudes)
    }

    pub fn advance(&mut self) -> Result<()> {
        let big_t = self.window.half_width();
        let t = self.time;
        if t >= big_t {
            return Err(QwalkError::WindowOverflow { half_width: big_t, time: t });
        }
        let side = self.window.side();
        let r = t + 1;
        let m = &self.coin;
        let cv = |i: usize, v: &[Complex64; 4]| {
            v[0] * m[i][0] + v[1] * m[i][1] + v[2] * m[i][2] + v[3] * m[i][3]
        };
        let src = &self.amplitudes;
        let row = |ox: usize| (ox < side).then(|| &src[ox * side..(ox + 1) * side]);
        let zero = Complex64::new(0.0, 0.0);
        self.scratch
            .par_chunks_mut(side)
            .enumerate()
            .skip(big_t - r)
            .take(2 * r + 1)
            .for_each(|(ox, out)| {
                // 0 moves −x, 1 moves +x, 2 moves −y, 3 moves +y.
                let up = row(ox + 1);
                let mid = row(ox).expect("row inside window");
                let down = ox.checked_sub(1).and_then(row);
                for oy in (big_t - r)..=(big_t + r) {
                    out[oy] = [
                        up.map_or(zero, |u| cv(0, &u[oy])),
                        down.map_or(zero, |d| cv(1, &d[oy])),
                        mid.get(oy + 1).map_or(zero, |v| cv(2, v)),
                        oy.checked_sub(1).map_or(zero, |i| cv(3, &mid[i])),
                    ];
                }
            });
        std::mem::swap(&mut self.amplitudes, &mut self.scratch);
        self.time += 1;
        Ok(())
    }
}

pub fn four_state_step(state: &FourWalkState, spec: &FourStateSpec) -> Result<FourWalkState> {
    let mut walk = FourStateWalk::exact(state.clone(), *spec.coin());
    walk.advance()?;
    Ok(walk.into_state())
}

/// State after `steps` steps from the origin.
pub fn four_state_run(spec: &FourStateSpec, steps: usize) -> Result<FourWalkState> {
    let mut walk = FourStateWalk::new(spec, steps);
    for _ in 0..steps {
        walk.advance()?;
    }
    Ok(walk.into_state())
}

pub fn four_state_evolve(spec: &FourStateSpec, steps: usize) -> Result<Distribution2D> {
    Ok(Distribution2D::from_state(&four_state_run(spec, steps)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn spec() -> FourStateSpec {
        let h = Complex64::from(FRAC_1_SQRT_2);
        FourStateSpec::grover([h, h, 0.0.into(), 0.0.into()]).unwrap()
    }

    #[test]
    fn zero_steps_is_delta() {
        let d = four_state_evolve(&spec(), 0).unwrap();
        assert!((d.get(0, 0) - 1.0).abs() < 1e-15);
        assert_eq!(d.total(), d.get(0, 0));
    }

    #[test]
    fn one_step_moves_each_component() {
        let s = spec();
        let d = four_state_evolve(&s, 1).unwrap();
        // Grover coin on (h, h, 0, 0) gives (0, 0, h, h).
        assert!(d.get(1, 0) < 1e-30 && d.get(-1, 0) < 1e-30);
        assert!((d.get(0, 1) - 0.5).abs() < 1e-15);
        assert!((d.get(0, -1) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn overflow_is_reported() {
        let st = spec().initial_state(0);
        assert!(matches!(four_state_step(&st, &spec()), Err(QwalkError::WindowOverflow { .. })));
    }
}
