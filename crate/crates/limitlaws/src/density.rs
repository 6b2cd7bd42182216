//! The rescaled limit law: Δ·δ₀ plus a continuous density on the ellipse D.

use std::cell::Cell;
use std::f64::consts::{PI, SQRT_2};

use qwalk_core::quadrature::{Adaptive, Estimate};
use qwalk_core::{CoinParameter, InitialCoinState, Result};

use crate::origin::delta_mass;

/// Error budget for quadratures over D.
pub const DENSITY_QUADRATURE_TARGET: f64 = 1e-8;

/// The quadratic form ξ(x, y) in the numerator of the density.
pub fn xi(x: f64, y: f64, init: &InitialCoinState, coin: &CoinParameter) -> f64 {
    let (c, s) = (coin.c(), coin.s());
    let (a, b, g) = (init.alpha, init.beta, init.gamma);
    (1.0 - y).powi(2) * a.norm_sqr()
        + 2.0 * (1.0 - y * y) * b.norm_sqr()
        + (1.0 + y).powi(2) * g.norm_sqr()
        + 2.0 * SQRT_2 * (x - c * y) * (1.0 - y) / s * (a * b.conj()).re
        - 2.0 * SQRT_2 * (x - c * y) * (1.0 + y) / s * (b * g.conj()).re
        + 2.0 * (s * s - 2.0 * x * x - (1.0 + c * c) * y * y + 4.0 * c * x * y) / (s * s)
            * (a * g.conj()).re
}

/// Strict membership in (x+y)²/(2(1+c)) + (x−y)²/(2(1−c)) < 1.
pub fn in_support(x: f64, y: f64, coin: &CoinParameter) -> bool {
    let c = coin.c();
    (x + y).powi(2) / (2.0 * (1.0 + c)) + (x - y).powi(2) / (2.0 * (1.0 - c)) < 1.0
}

pub fn continuous_density(x: f64, y: f64, init: &InitialCoinState, coin: &CoinParameter) -> f64 {
    if !in_support(x, y, coin) {
        return 0.0;
    }
    xi(x, y, init, coin) / (2.0 * PI * PI * (1.0 - x * x) * (1.0 - y * y))
}

/// Limit law of (X_t/t, Y_t/t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitDensity {
    coin: CoinParameter,
    initial: InitialCoinState,
    delta_mass: f64,
}

impl LimitDensity {
    pub fn new(coin: CoinParameter, initial: InitialCoinState) -> Self {
        Self { coin, initial, delta_mass: delta_mass(&coin, &initial) }
    }

    pub fn coin(&self) -> CoinParameter {
        self.coin
    }

    pub fn initial(&self) -> InitialCoinState {
        self.initial
    }

    /// Weight of the point mass at the origin.
    pub fn delta_mass(&self) -> f64 {
        self.delta_mass
    }

    pub fn xi(&self, x: f64, y: f64) -> f64 {
        xi(x, y, &self.initial, &self.coin)
    }

    pub fn in_support(&self, x: f64, y: f64) -> bool {
        in_support(x, y, &self.coin)
    }

    pub fn density(&self, x: f64, y: f64) -> f64 {
        continuous_density(x, y, &self.initial, &self.coin)
    }

    /// ∬_D x^r1 y^r2 f(x, y).
    ///
    /// D is parameterized as x = ρ cos(φ − h), y = ρ cos(φ + h) with
    /// h = arccos(c)/2, so 1 − x² and 1 − y² vanish only at the four tangent
    /// points ρ = 1, φ ∈ {±h, π ± h}. With ρ = 1 − u² the radial direction
    /// is smooth, 1 − x is evaluated without cancellation, and the angular
    /// integrals are split at the tangent angles. The resulting singularities
    /// are logarithmic and handled by adaptive refinement.
    pub fn continuous_moment(&self, r1: u32, r2: u32) -> Result<Estimate> {
        let h = 0.5 * self.coin.c().acos();
        let jac = self.coin.s().abs();
        let init = self.initial;
        let coin = self.coin;
        let breaks = [-PI + h, -h, h, PI - h, PI + h];

        let inner_err = Cell::new(0.0f64);
        let inner_rule = Adaptive::new(1e-14, 1e-13);
        let outer_rule = Adaptive::new(1e-12, 1e-12);
        let outer = outer_rule.integrate(
            |u| {
                let rho = 1.0 - u * u;
                let point = |phi: f64| {
                    let (px, py) = (phi - h, phi + h);
                    let x = rho * px.cos();
                    let y = rho * py.cos();
                    let omx = one_minus_cos(u, rho, px);
                    let opx = one_plus_cos(u, rho, px);
                    let omy = one_minus_cos(u, rho, py);
                    let opy = one_plus_cos(u, rho, py);
                    let f = xi(x, y, &init, &coin) / (2.0 * PI * PI * omx * opx * omy * opy);
                    x.powi(r1 as i32) * y.powi(r2 as i32) * f
                };
                let weight = jac * rho * 2.0 * u;
                let (mut total, mut err) = (0.0, 0.0);
                for w in breaks.windows(2) {
                    let e = inner_rule.integrate(point, w[0], w[1]);
                    total += e.value;
                    err += e.abs_error;
                }
                // The outer range has length 1, so the largest weighted inner
                // error bounds their contribution.
                inner_err.set(inner_err.get().max(err * weight));
                total * weight
            },
            0.0,
            1.0,
        );
        let est = Estimate {
            value: outer.value,
            abs_error: outer.abs_error + inner_err.get(),
        };
        est.check(DENSITY_QUADRATURE_TARGET)?;
        Ok(est)
    }

    /// ∬_D f, which equals 1 − Δ.
    pub fn continuous_mass(&self) -> Result<Estimate> {
        self.continuous_moment(0, 0)
    }

    /// Full moment of the limit law, Δ·0^(r1+r2) included.
    pub fn moment(&self, r1: u32, r2: u32) -> Result<Estimate> {
        let mut est = self.continuous_moment(r1, r2)?;
        if r1 + r2 == 0 {
            est.value += self.delta_mass;
        }
        Ok(est)
    }
}

/// 1 − ρ cos ψ with ρ = 1 − u².
fn one_minus_cos(u: f64, rho: f64, psi: f64) -> f64 {
    let h = (0.5 * psi).sin();
    u * u + 2.0 * rho * h * h
}

/// 1 + ρ cos ψ with ρ = 1 − u².
fn one_plus_cos(u: f64, rho: f64, psi: f64) -> f64 {
    let h = (0.5 * psi).cos();
    u * u + 2.0 * rho * h * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn half() -> CoinParameter {
        CoinParameter::new(PI / 2.0).unwrap()
    }

    #[test]
    fn xi_at_origin() {
        let c = CoinParameter::grover();
        assert_eq!(xi(0.0, 0.0, &InitialCoinState::rest(), &c), 2.0);
        assert_eq!(xi(0.0, 0.0, &InitialCoinState::from_real(1.0, 0.0, 0.0).unwrap(), &c), 1.0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let v = xi(0.0, 0.0, &InitialCoinState::from_real(r, 0.0, r).unwrap(), &c);
        assert!((v - 2.0).abs() < 1e-15);
    }

    #[test]
    fn support_examples() {
        assert!(in_support(0.5, 0.5, &half()));
        assert!(!in_support(1.0, 0.0, &half()));
        assert!(!in_support(1.05, 1.05, &CoinParameter::grover()));
    }

    #[test]
    fn density_examples() {
        let d = continuous_density(0.0, 0.0, &InitialCoinState::rest(), &half());
        assert!((d - 1.0 / (PI * PI)).abs() < 1e-16);
        assert_eq!(continuous_density(0.9, 0.9, &InitialCoinState::rest(), &half()), 0.0);
    }

    #[test]
    fn mass_at_half_pi_is_two_over_pi() {
        let ld = LimitDensity::new(half(), InitialCoinState::rest());
        let m = ld.continuous_mass().unwrap();
        assert!((m.value - 2.0 / PI).abs() < 1e-10, "{m:?}");
        assert!((ld.delta_mass() + m.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn normalization_over_a_grid() {
        let i = Complex64::i();
        let inits = [
            InitialCoinState::rest(),
            InitialCoinState::symmetric(),
            InitialCoinState::from_real(0.6, 0.0, 0.8).unwrap(),
            InitialCoinState::new(0.0.into(), 0.6.into(), 0.8 * i).unwrap(),
            InitialCoinState::new(0.6.into(), 0.48 * i, 0.64.into()).unwrap(),
        ];
        for theta in [0.4, PI / 2.0, (-1.0f64 / 3.0).acos(), 2.5, 4.0] {
            for init in inits {
                let ld = LimitDensity::new(CoinParameter::new(theta).unwrap(), init);
                let m = ld.continuous_mass().unwrap();
                assert!((ld.delta_mass() + m.value - 1.0).abs() <= 1e-6, "theta {theta}: {m:?}");
            }
        }
    }
}
