//! Initial coin states and amplitude fields on a lattice window.

use num_complex::Complex64;

use crate::error::{QwalkError, Result};
use crate::lattice::LatticeWindow;
use crate::numeric::pairwise_sum;

/// Accepted deviation of the squared norm from 1 on input.
pub const INPUT_NORM_TOLERANCE: f64 = 1e-10;

/// Coin state (α, β, γ) placed at the origin at t = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialCoinState {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
}

impl InitialCoinState {
    /// Checked constructor; the amplitudes are used as given.
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<Self> {
        let state = Self { alpha, beta, gamma };
        let n = state.norm_sqr();
        if n == 0.0 {
            return Err(QwalkError::ZeroState);
        }
        if !n.is_finite() || (n - 1.0).abs() > INPUT_NORM_TOLERANCE {
            return Err(QwalkError::NotNormalized(n));
        }
        Ok(state)
    }

    /// Rescale to unit norm.
    pub fn normalized(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<Self> {
        let n = (alpha.norm_sqr() + beta.norm_sqr() + gamma.norm_sqr()).sqrt();
        if n == 0.0 {
            return Err(QwalkError::ZeroState);
        }
        if !n.is_finite() {
            return Err(QwalkError::NotNormalized(n));
        }
        Ok(Self { alpha: alpha / n, beta: beta / n, gamma: gamma / n })
    }

    pub fn from_real(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        Self::new(alpha.into(), beta.into(), gamma.into())
    }

    /// (0, 1, 0).
    pub fn rest() -> Self {
        Self { alpha: 0.0.into(), beta: 1.0.into(), gamma: 0.0.into() }
    }

    /// (1/√3, 1/√3, 1/√3).
    pub fn symmetric() -> Self {
        let a = Complex64::from(1.0 / 3f64.sqrt());
        Self { alpha: a, beta: a, gamma: a }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.alpha.norm_sqr() + self.beta.norm_sqr() + self.gamma.norm_sqr()
    }

    pub fn as_array(&self) -> [Complex64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    /// (γ, β, α).
    pub fn reversed(&self) -> Self {
        Self { alpha: self.gamma, beta: self.beta, gamma: self.alpha }
    }
}

/// Amplitude field ψ_t(x, y) ∈ ℂ^D on a window.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeState<const D: usize> {
    time: usize,
    window: LatticeWindow,
    amplitudes: Vec<[Complex64; D]>,
}

/// Three-state alternate walk state.
pub type WalkState = LatticeState<3>;
/// Four-state Grover walk state.
pub type FourWalkState = LatticeState<4>;

impl<const D: usize> LatticeState<D> {
    /// Single amplitude vector at the origin, t = 0.
    pub fn localized(window: LatticeWindow, coin_state: [Complex64; D]) -> Self {
        let mut amplitudes = vec![[Complex64::new(0.0, 0.0); D]; window.len()];
        amplitudes[window.index(0, 0).expect("origin is in every window")] = coin_state;
        Self { time: 0, window, amplitudes }
    }

    /// Assemble from raw parts. The caller vouches for the support bound.
    pub fn from_parts(time: usize, window: LatticeWindow, amplitudes: Vec<[Complex64; D]>) -> Self {
        assert_eq!(amplitudes.len(), window.len(), "amplitude buffer does not match window");
        Self { time, window, amplitudes }
    }

    pub fn into_parts(self) -> (usize, LatticeWindow, Vec<[Complex64; D]>) {
        (self.time, self.window, self.amplitudes)
    }

    pub fn time(&self) -> usize {
        self.time
    }

    pub fn window(&self) -> LatticeWindow {
        self.window
    }

    pub fn amplitudes(&self) -> &[[Complex64; D]] {
        &self.amplitudes
    }

    /// ψ(x, y); zero outside the window.
    pub fn amplitude(&self, x: i64, y: i64) -> [Complex64; D] {
        self.window
            .index(x, y)
            .map_or([Complex64::new(0.0, 0.0); D], |i| self.amplitudes[i])
    }

    pub fn probability(&self, x: i64, y: i64) -> f64 {
        self.amplitude(x, y).iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        let p: Vec<f64> = self
            .amplitudes
            .iter()
            .map(|v| v.iter().map(|a| a.norm_sqr()).sum())
            .collect();
        pairwise_sum(&p)
    }

    /// Same field on a window of half-width `half_width`; only grows.
    pub fn with_half_width(&self, half_width: usize) -> Self {
        if half_width <= self.window.half_width() {
            return self.clone();
        }
        let window = LatticeWindow::new(half_width);
        let mut amplitudes = vec![[Complex64::new(0.0, 0.0); D]; window.len()];
        for (i, (x, y)) in self.window.sites().enumerate() {
            amplitudes[window.index(x, y).unwrap()] = self.amplitudes[i];
        }
        Self { time: self.time, window, amplitudes }
    }

    /// Same field cut down to half-width `half_width`, dropping whatever lies
    /// outside. Used to get tight windows around the support.
    pub fn cropped(&self, half_width: usize) -> Self {
        if half_width >= self.window.half_width() {
            return self.clone();
        }
        let window = LatticeWindow::new(half_width);
        let amplitudes = window.sites().map(|(x, y)| self.amplitude(x, y)).collect();
        Self { time: self.time, window, amplitudes }
    }

    /// True when every amplitude has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.amplitudes.iter().all(|v| v.iter().all(|a| a.im == 0.0))
    }
}

/// Walk state at t = 0 holding (α, β, γ) at the origin.
///
/// With `normalize` the input is rescaled to unit norm, otherwise it must
/// already be normalized.
pub fn make_initial(
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    normalize: bool,
) -> Result<WalkState> {
    let init = if normalize {
        InitialCoinState::normalized(alpha, beta, gamma)?
    } else {
        InitialCoinState::new(alpha, beta, gamma)?
    };
    Ok(initial_state(&init))
}

pub fn initial_state(init: &InitialCoinState) -> WalkState {
    LatticeState::localized(LatticeWindow::new(0), init.as_array())
}
