//! The alternate walk: one step is S₂·C·S₁·C.
//!
//! The coins are applied on the fly inside the shifts: output component i
//! only needs row i of C, so fusing costs nothing and a step becomes a single
//! sweep over rows.

use num_complex::Complex64;
use rayon::prelude::*;

use qwalk_core::{CoinMatrix, LatticeState, LatticeWindow, QwalkError, Result, WalkState};

const ZERO: [Complex64; 3] = [Complex64::new(0.0, 0.0); 3];

/// In-place evolution of a three-state walk with a reusable scratch buffer.
#[derive(Debug, Clone)]
pub struct ThreeStateWalk {
    coin: CoinMatrix,
    time: usize,
    window: LatticeWindow,
    amplitudes: Vec<[Complex64; 3]>,
    scratch: Vec<[Complex64; 3]>,
}

impl ThreeStateWalk {
    /// Prepare `steps` steps from `initial`, widening the window if needed.
    pub fn new(initial: &WalkState, coin: CoinMatrix, steps: usize) -> Self {
        let need = initial.time() + steps;
        Self::exact(initial.with_half_width(need), coin)
    }

    /// Keep the state's window as is.
    pub fn exact(state: WalkState, coin: CoinMatrix) -> Self {
        let (time, window, amplitudes) = state.into_parts();
        let scratch = vec![ZERO; amplitudes.len()];
        Self { coin, time, window, amplitudes, scratch }
    }

    pub fn time(&self) -> usize {
        self.time
    }

    pub fn window(&self) -> LatticeWindow {
        self.window
    }

    pub fn coin(&self) -> &CoinMatrix {
        &self.coin
    }

    pub fn amplitudes(&self) -> &[[Complex64; 3]] {
        &self.amplitudes
    }

    pub fn amplitude(&self, x: i64, y: i64) -> [Complex64; 3] {
        self.window.index(x, y).map_or(ZERO, |i| self.amplitudes[i])
    }

    pub fn probability(&self, x: i64, y: i64) -> f64 {
        self.amplitude(x, y).iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn state(&self) -> WalkState {
        LatticeState::from_parts(self.time, self.window, self.amplitudes.clone())
    }

    pub fn into_state(self) -> WalkState {
        LatticeState::from_parts(self.time, self.window, self.amplitudes)
    }

    /// One step. Only the square of radius t+1 around the origin is touched.
    pub fn advance(&mut self) -> Result<()> {
        let big_t = self.window.half_width();
        let t = self.time;
        if t >= big_t {
            return Err(QwalkError::WindowOverflow { half_width: big_t, time: t });
        }
        let side = self.window.side();
        let r = t + 1;
        let m = self.coin.entries();
        let zero = Complex64::new(0.0, 0.0);
        // Component i of C·v.
        let cv = |i: usize, v: &[Complex64; 3]| v[0] * m[i][0] + v[1] * m[i][1] + v[2] * m[i][2];

        // Per output row: S₁·C into a row buffer from rows x±1, then S₂·C
        // along the row. Reads the main buffer, writes the scratch one.
        let src = &self.amplitudes;
        let row = |ox: usize| -> Option<&[[Complex64; 3]]> {
            (ox < side).then(|| &src[ox * side..(ox + 1) * side])
        };
        self.scratch
            .par_chunks_mut(side)
            .enumerate()
            .skip(big_t - r)
            .take(2 * r + 1)
            .for_each_init(
                || vec![[zero; 3]; side],
                |mid_row, (ox, out)| {
                    let up = row(ox + 1);
                    let mid = row(ox).expect("row inside window");
                    let down = ox.checked_sub(1).and_then(row);
                    for oy in (big_t - t)..=(big_t + t) {
                        mid_row[oy] = [
                            up.map_or(zero, |u| cv(0, &u[oy])),
                            cv(1, &mid[oy]),
                            down.map_or(zero, |d| cv(2, &d[oy])),
                        ];
                    }
                    let s = &*mid_row;
                    for oy in (big_t - r)..=(big_t + r) {
                        out[oy] = [
                            s.get(oy + 1).map_or(zero, |v| cv(0, v)),
                            cv(1, &s[oy]),
                            oy.checked_sub(1).map_or(zero, |i| cv(2, &s[i])),
                        ];
                    }
                    // Leave the row buffer clean outside the next support.
                    for oy in (big_t - t)..=(big_t + t) {
                        mid_row[oy] = [zero; 3];
                    }
                },
            );
        std::mem::swap(&mut self.amplitudes, &mut self.scratch);

        self.time += 1;
        Ok(())
    }
}

/// One step of the walk on the state's own window.
pub fn step(state: &WalkState, coin: &CoinMatrix) -> Result<WalkState> {
    let mut walk = ThreeStateWalk::exact(state.clone(), *coin);
    walk.advance()?;
    Ok(walk.into_state())
}

/// `steps` steps; the window is widened once up front so the support fits.
pub fn evolve(initial: &WalkState, coin: &CoinMatrix, steps: usize) -> Result<WalkState> {
    let mut walk = ThreeStateWalk::new(initial, *coin, steps);
    for _ in 0..steps {
        walk.advance()?;
    }
    Ok(walk.into_state())
}

/// (t, P_t(0,0)) for t = 0..=steps from a single pass.
pub fn return_probability_series(
    initial: &WalkState,
    coin: &CoinMatrix,
    steps: usize,
) -> Result<Vec<(usize, f64)>> {
    let mut walk = ThreeStateWalk::new(initial, *coin, steps);
    let mut out = Vec::with_capacity(steps + 1);
    out.push((walk.time(), walk.probability(0, 0)));
    for _ in 0..steps {
        walk.advance()?;
        out.push((walk.time(), walk.probability(0, 0)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qwalk_core::{build_coin, initial_state, InitialCoinState};
    use std::f64::consts::PI;

    #[test]
    fn one_step_at_half_pi() {
        let coin = build_coin(PI / 2.0).unwrap();
        let s = evolve(&initial_state(&InitialCoinState::rest()), &coin, 1).unwrap();
        let want = [
            ((-1, -1), 0.125),
            ((-1, 0), 0.25),
            ((-1, 1), 0.125),
            ((1, -1), 0.125),
            ((1, 0), 0.25),
            ((1, 1), 0.125),
        ];
        for (x, y) in s.window().sites() {
            let p = want.iter().find(|w| w.0 == (x, y)).map_or(0.0, |w| w.1);
            assert!((s.probability(x, y) - p).abs() <= 1e-15, "({x},{y})");
        }
        assert_eq!(s.time(), 1);
    }

    #[test]
    fn zero_steps_is_identity() {
        let init = initial_state(&InitialCoinState::symmetric());
        let s = evolve(&init, &CoinMatrix::grover(), 0).unwrap();
        assert_eq!(s, init);
        assert!((s.probability(0, 0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn step_refuses_to_overflow() {
        let init = initial_state(&InitialCoinState::rest());
        assert_eq!(
            step(&init, &CoinMatrix::grover()),
            Err(QwalkError::WindowOverflow { half_width: 0, time: 0 })
        );
        let roomy = init.with_half_width(1);
        let one = step(&roomy, &CoinMatrix::grover()).unwrap();
        assert!(matches!(step(&one, &CoinMatrix::grover()), Err(QwalkError::WindowOverflow { .. })));
    }

    #[test]
    fn series_starts_at_one() {
        let s = return_probability_series(&initial_state(&InitialCoinState::rest()), &CoinMatrix::grover(), 3)
            .unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s[0], (0, 1.0));
    }
}
