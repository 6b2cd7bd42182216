//! The parameterized three-state coin.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64;

use crate::error::{QwalkError, Result};

/// Angles closer than this to 0 or π are treated as degenerate.
const DEGENERACY_GUARD: f64 = 1e-12;

/// Coin angle θ with its cosine and sine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinParameter {
    theta: f64,
    c: f64,
    s: f64,
}

impl CoinParameter {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..TAU).contains(&theta) {
            return Err(QwalkError::AngleOutOfRange { value: theta, expected: "[0, 2π)" });
        }
        if theta.abs() < DEGENERACY_GUARD || (theta - PI).abs() < DEGENERACY_GUARD {
            return Err(QwalkError::DegenerateCoin(theta));
        }
        Ok(Self::from_angle(theta))
    }

    fn from_angle(theta: f64) -> Self {
        // cos θ below the rounding error of θ itself is taken as exactly 0,
        // so the nearest float to π/2 yields the c = 0 coin.
        let c = theta.cos();
        let c = if c.abs() <= theta * f64::EPSILON { 0.0 } else { c };
        Self { theta, c, s: theta.sin() }
    }

    /// The Grover point c = −1/3, s = 2√2/3.
    pub fn grover() -> Self {
        Self { theta: (-1.0f64 / 3.0).acos(), c: -1.0 / 3.0, s: 2.0 * 2f64.sqrt() / 3.0 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// θ brought into (0, π): angles in (π, 2π) are shifted down by π.
    pub fn folded_theta(&self) -> f64 {
        if self.theta > PI {
            self.theta - PI
        } else {
            self.theta
        }
    }

    /// The parameter at [`Self::folded_theta`], identical to constructing it
    /// from θ − π directly.
    pub fn folded(&self) -> Self {
        Self::from_angle(self.folded_theta())
    }
}

/// Real symmetric 3×3 coin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMatrix {
    parameter: CoinParameter,
    entries: [[f64; 3]; 3],
}

impl CoinMatrix {
    pub fn new(parameter: CoinParameter) -> Self {
        let (c, s) = (parameter.c, parameter.s);
        let d = -(1.0 + c) / 2.0;
        let o = s * FRAC_1_SQRT_2;
        let f = (1.0 - c) / 2.0;
        Self { parameter, entries: [[d, o, f], [o, c, o], [f, o, d]] }
    }

    pub fn grover() -> Self {
        Self::new(CoinParameter::grover())
    }

    pub fn parameter(&self) -> CoinParameter {
        self.parameter
    }

    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.entries
    }

    #[inline]
    pub fn apply(&self, v: &[Complex64; 3]) -> [Complex64; 3] {
        let m = &self.entries;
        std::array::from_fn(|i| v[0] * m[i][0] + v[1] * m[i][1] + v[2] * m[i][2])
    }

    /// Largest entry of |M·M − I|.
    pub fn involution_defect(&self) -> f64 {
        let m = &self.entries;
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let p: f64 = (0..3).map(|k| m[i][k] * m[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((p - target).abs());
            }
        }
        worst
    }
}

/// Coin matrix for angle θ.
pub fn build_coin(theta: f64) -> Result<CoinMatrix> {
    Ok(CoinMatrix::new(CoinParameter::new(theta)?))
}
