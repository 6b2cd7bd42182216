//! Closed forms at the origin: g-functions, the asymptotic origin amplitude,
//! its squared norm (the return-probability limit) and the point mass Δ.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use qwalk_core::{CoinParameter, InitialCoinState, QwalkError, Result};

/// g₁, g₂, g₃ at one angle in (0, π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GTriple {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
}

/// g-functions on (0, π). Angles in (π, 2π) must be folded by the caller.
pub fn g_functions(theta: f64) -> Result<GTriple> {
    if !theta.is_finite() || theta <= 0.0 || theta >= PI {
        if theta == 0.0 || theta == PI {
            return Err(QwalkError::DegenerateCoin(theta));
        }
        return Err(QwalkError::AngleOutOfRange { value: theta, expected: "(0, π)" });
    }
    Ok(g_unchecked(theta, theta.cos(), theta.sin()))
}

fn g_unchecked(theta: f64, c: f64, s: f64) -> GTriple {
    GTriple {
        g1: 2.0 * (PI * (1.0 - c).powi(2) - s * (3.0 + c * c) + 4.0 * c * theta) / (PI * s * s),
        g2: SQRT_2 * (PI * (1.0 - c) + 2.0 * (c * s - theta)) / (PI * s),
        g3: s / PI,
    }
}

/// g-functions after folding θ into (0, π).
pub fn folded_g(coin: &CoinParameter) -> GTriple {
    let f = coin.folded();
    g_unchecked(f.theta(), f.c(), f.s())
}

/// lim ψ_t(0,0) for the walk started from `init`.
pub fn origin_amplitude(coin: &CoinParameter, init: &InitialCoinState) -> [Complex64; 3] {
    let GTriple { g1, g2, g3 } = folded_g(coin);
    let (a, b, c) = (init.alpha, init.beta, init.gamma);
    [
        a * g3 + b * (0.5 * g2) + c * (0.5 * g1),
        (a + c) * (0.5 * g2) + b * (1.0 - 2.0 * g3),
        a * (0.5 * g1) + b * (0.5 * g2) + c * g3,
    ]
}

pub fn asymptotic_origin(theta: f64, init: &InitialCoinState) -> Result<[Complex64; 3]> {
    Ok(origin_amplitude(&CoinParameter::new(theta)?, init))
}

/// lim P_t(0,0).
pub fn return_probability_limit(theta: f64, init: &InitialCoinState) -> Result<f64> {
    let v = asymptotic_origin(theta, init)?;
    Ok(v.iter().map(|a| a.norm_sqr()).sum())
}

pub fn delta_mass(coin: &CoinParameter, init: &InitialCoinState) -> f64 {
    let GTriple { g1, g2, g3 } = folded_g(coin);
    let (a, b, c) = (init.alpha, init.beta, init.gamma);
    let b2 = b.norm_sqr();
    b2 + (a * c.conj()).re * g1 + ((a + c) * b.conj()).re * g2 + (1.0 - 3.0 * b2) * g3
}

/// Weight Δ of the point mass at the origin in the rescaled limit law.
pub fn delta_coefficient(theta: f64, init: &InitialCoinState) -> Result<f64> {
    Ok(delta_mass(&CoinParameter::new(theta)?, init))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grover() -> f64 {
        (-1.0f64 / 3.0).acos()
    }

    #[test]
    fn g_at_half_pi() {
        let g = g_functions(PI / 2.0).unwrap();
        assert!((g.g1 - (2.0 - 6.0 / PI)).abs() < 1e-15);
        assert!(g.g2.abs() < 1e-15);
        assert!((g.g3 - 1.0 / PI).abs() < 1e-16);
    }

    #[test]
    fn g_at_grover() {
        let g = g_functions(grover()).unwrap();
        assert!((g.g1 - 0.0747415850585743).abs() < 1e-13, "{}", g.g1);
        assert!((g.g2 - -0.124625782627).abs() < 1e-11, "{}", g.g2);
        assert!((g.g3 - 0.300105438719).abs() < 1e-11, "{}", g.g3);
    }

    #[test]
    fn g_rejects_outside_open_interval() {
        assert_eq!(g_functions(0.0), Err(QwalkError::DegenerateCoin(0.0)));
        assert_eq!(g_functions(PI), Err(QwalkError::DegenerateCoin(PI)));
        assert!(matches!(g_functions(4.0), Err(QwalkError::AngleOutOfRange { .. })));
        assert!(matches!(g_functions(-1.0), Err(QwalkError::AngleOutOfRange { .. })));
    }

    #[test]
    fn return_limits() {
        let rest = InitialCoinState::rest();
        let half = return_probability_limit(PI / 2.0, &rest).unwrap();
        assert!((half - (1.0 - 2.0 / PI).powi(2)).abs() < 1e-15);
        let alpha = InitialCoinState::from_real(1.0, 0.0, 0.0).unwrap();
        let a = return_probability_limit(PI / 2.0, &alpha).unwrap();
        assert!((a - (1.0 / (PI * PI) + (1.0 - 3.0 / PI).powi(2))).abs() < 1e-15);
        assert!((a - 0.1033525).abs() < 1e-7);
        let g = return_probability_limit(grover(), &rest).unwrap();
        assert!((g - 0.167597135).abs() < 1e-8, "{g}");
        assert!(matches!(return_probability_limit(PI, &rest), Err(QwalkError::DegenerateCoin(_))));
    }

    #[test]
    fn deltas() {
        let rest = InitialCoinState::rest();
        assert_eq!(delta_coefficient(PI / 2.0, &rest).unwrap(), 1.0 - 2.0 / PI);
        let g = delta_coefficient(grover(), &rest).unwrap();
        assert!((g - (1.0 - 4.0 * SQRT_2 / (3.0 * PI))).abs() < 1e-12);
        let sym = delta_coefficient(grover(), &InitialCoinState::symmetric()).unwrap();
        assert!((sym - 0.2751633399347).abs() < 1e-12, "{sym}");
        assert!(delta_coefficient(0.0, &rest).is_err());
    }

    #[test]
    fn origin_amplitude_examples() {
        let v = asymptotic_origin(PI / 2.0, &InitialCoinState::rest()).unwrap();
        assert!(v[0].norm() < 1e-15 && v[2].norm() < 1e-15);
        assert!((v[1].re - (1.0 - 2.0 / PI)).abs() < 1e-15);
    }

    #[test]
    fn fold_is_applied_once() {
        let init = InitialCoinState::symmetric();
        for theta in [3.5, 4.0, 5.5, 6.2] {
            let hi = return_probability_limit(theta, &init).unwrap();
            let lo = return_probability_limit(theta - PI, &init).unwrap();
            assert_eq!(hi, lo);
            assert_eq!(delta_coefficient(theta, &init).unwrap(), delta_coefficient(theta - PI, &init).unwrap());
        }
    }
}
