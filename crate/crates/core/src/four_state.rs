//! Four-state Grover walk on ℤ².

use num_complex::Complex64;

use crate::error::{QwalkError, Result};
use crate::lattice::LatticeWindow;
use crate::state::{FourWalkState, LatticeState};

/// Coin index → lattice displacement (x, y).
pub const FOUR_STATE_SHIFTS: [(i64, i64); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];

const COIN_TOLERANCE: f64 = 1e-14;
const NORM_TOLERANCE: f64 = 1e-12;

/// 4×4 Grover coin: −1/2 on the diagonal, +1/2 elsewhere.
pub fn grover_coin4() -> [[f64; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { -0.5 } else { 0.5 }))
}

/// Coin and initial coin state for the four-state walk started at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct FourStateSpec {
    coin: [[f64; 4]; 4],
    initial: [Complex64; 4],
}

impl FourStateSpec {
    pub fn new(coin: [[f64; 4]; 4], initial: [Complex64; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                if coin[i][j] != coin[j][i] {
                    return Err(QwalkError::InvalidCoin(format!("not symmetric at ({i}, {j})")));
                }
                let p: f64 = (0..4).map(|k| coin[i][k] * coin[k][j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                if (p - want).abs() > COIN_TOLERANCE {
                    return Err(QwalkError::InvalidCoin(format!("not an involution at ({i}, {j})")));
                }
            }
        }
        let n: f64 = initial.iter().map(|a| a.norm_sqr()).sum();
        if n == 0.0 {
            return Err(QwalkError::ZeroState);
        }
        if !n.is_finite() || (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(QwalkError::NotNormalized(n));
        }
        Ok(Self { coin, initial })
    }

    pub fn grover(initial: [Complex64; 4]) -> Result<Self> {
        Self::new(grover_coin4(), initial)
    }

    pub fn coin(&self) -> &[[f64; 4]; 4] {
        &self.coin
    }

    pub fn initial(&self) -> [Complex64; 4] {
        self.initial
    }

    pub fn shift_map(&self) -> [(i64, i64); 4] {
        FOUR_STATE_SHIFTS
    }

    pub fn initial_state(&self, half_width: usize) -> FourWalkState {
        LatticeState::localized(LatticeWindow::new(half_width), self.initial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_half() -> [Complex64; 4] {
        let h = Complex64::from(std::f64::consts::FRAC_1_SQRT_2);
        [h, h, 0.0.into(), 0.0.into()]
    }

    #[test]
    fn grover_spec_is_valid() {
        let spec = FourStateSpec::grover(half_half()).unwrap();
        assert_eq!(spec.coin()[0][0], -0.5);
        assert_eq!(spec.coin()[2][1], 0.5);
        assert_eq!(spec.shift_map()[3], (0, 1));
    }

    #[test]
    fn rejects_non_involution() {
        let mut coin = grover_coin4();
        coin[0][0] = 0.5;
        assert!(matches!(FourStateSpec::new(coin, half_half()), Err(QwalkError::InvalidCoin(_))));
    }

    #[test]
    fn rejects_bad_initial() {
        let z = Complex64::from(0.0);
        assert_eq!(FourStateSpec::grover([z; 4]), Err(QwalkError::ZeroState));
        let one = Complex64::from(1.0);
        assert!(matches!(
            FourStateSpec::grover([one, one, z, z]),
            Err(QwalkError::NotNormalized(_))
        ));
    }
}
