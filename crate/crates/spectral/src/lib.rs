//! Momentum-space picture of the alternate walk.
//!
//! The Fourier transform of one step is U(a, b) = R(b)·Ĉ·R(a)·Ĉ with
//! R(k) = diag(e^{ik}, 1, e^{−ik}). Its spectrum is {1, e^{iν}, e^{−iν}}
//! with cos(ν/2) = z(a, b), and the limit moments of X_t/t, Y_t/t are torus
//! averages of powers of the group velocities.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use qwalk_core::numeric::pairwise_sum;
use qwalk_core::quadrature::{torus_mean, Estimate};
use qwalk_core::{CoinMatrix, CoinParameter, InitialCoinState, QwalkError, Result};
use qwalk_engine::Distribution2D;

/// Largest total order accepted by [`limit_moment`].
pub const MAX_MOMENT_ORDER: u32 = 6;
/// Error budget for [`limit_moment`].
pub const MOMENT_QUADRATURE_TARGET: f64 = 1e-9;

const TORUS_ORDER: usize = 64;
const DEGENERACY_GUARD: f64 = 1e-12;

/// Point (a, b) of the Brillouin zone [−π, π)².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumPoint {
    a: f64,
    b: f64,
}

impl MomentumPoint {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        for v in [a, b] {
            if !v.is_finite() || !(-PI..PI).contains(&v) {
                return Err(QwalkError::AngleOutOfRange { value: v, expected: "[−π, π)" });
            }
        }
        Ok(Self { a, b })
    }

    /// Reduce arbitrary real coordinates into the zone.
    pub fn wrapped(a: f64, b: f64) -> Self {
        let w = |v: f64| {
            let r = (v + PI).rem_euclid(2.0 * PI) - PI;
            if r >= PI { -PI } else { r }
        };
        Self { a: w(a), b: w(b) }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// 3×3 complex matrix U(a, b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepMatrix(pub [[Complex64; 3]; 3]);

impl StepMatrix {
    pub fn entries(&self) -> &[[Complex64; 3]; 3] {
        &self.0
    }

    pub fn apply(&self, v: &[Complex64; 3]) -> [Complex64; 3] {
        let m = &self.0;
        std::array::from_fn(|i| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2])
    }

    /// max |U†U − I|.
    pub fn unitarity_defect(&self) -> f64 {
        let m = &self.0;
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let p: Complex64 = (0..3).map(|k| m[k][i].conj() * m[k][j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((p - want).norm());
            }
        }
        worst
    }
}

/// R(b)·Ĉ·R(a)·Ĉ.
pub fn step_matrix(p: MomentumPoint, coin: &CoinMatrix) -> StepMatrix {
    let c = coin.entries();
    let r = |k: f64| [Complex64::cis(k), Complex64::new(1.0, 0.0), Complex64::cis(-k)];
    let (ra, rb) = (r(p.a), r(p.b));
    // M = R(a)·Ĉ, then U = R(b)·Ĉ·M.
    let m: [[Complex64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| ra[i] * c[i][j]));
    StepMatrix(std::array::from_fn(|i| {
        std::array::from_fn(|j| rb[i] * (0..3).map(|k| m[k][j] * c[i][k]).sum::<Complex64>())
    }))
}

/// z(a, b) = ((1+c)/2)cos((a+b)/2) + ((1−c)/2)cos((a−b)/2).
fn z_of(a: f64, b: f64, c: f64) -> f64 {
    0.5 * (1.0 + c) * (0.5 * (a + b)).cos() + 0.5 * (1.0 - c) * (0.5 * (a - b)).cos()
}

/// (ν₁, ν₂, ν₃) = (0, 2 arccos z, −2 arccos z).
pub fn eigenphases(p: MomentumPoint, coin: &CoinMatrix) -> [f64; 3] {
    let z = z_of(p.a, p.b, coin.parameter().c()).clamp(-1.0, 1.0);
    let nu = 2.0 * z.acos();
    [0.0, nu, -nu]
}

/// Closed-form eigenvector for the eigenvalue 1.
pub fn eigenvector_v1(p: MomentumPoint, coin: &CoinMatrix) -> Result<[Complex64; 3]> {
    v1_at(p.a, p.b, &coin.parameter())
        .ok_or(QwalkError::DegenerateMomentum { a: p.a, b: p.b, what: "eigenvector v1 is undefined" })
}

fn v1_at(a: f64, b: f64, coin: &CoinParameter) -> Option<[Complex64; 3]> {
    let (c, s) = (coin.c(), coin.s());
    let (ha, hb) = (0.5 * (a + b), 0.5 * (a - b));
    let z = z_of(a, b, c);
    let n1 = 16.0 * (1.0 - z * z);
    if n1 < DEGENERACY_GUARD {
        return None;
    }
    let k = 1.0 / n1.sqrt();
    Some([
        (Complex64::cis(ha) - Complex64::cis(-hb)) * (SQRT_2 * s * k),
        Complex64::new(0.0, 2.0 * ((1.0 + c) * ha.sin() - (1.0 - c) * hb.sin()) * k),
        -(Complex64::cis(-ha) - Complex64::cis(hb)) * (SQRT_2 * s * k),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// λ₂ = e^{iν}.
    Two,
    /// λ₃ = e^{−iν}.
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    A,
    B,
}

/// D_kλ_j/λ_j for k ∈ {a, b}; equals −∂ν_j/∂k.
pub fn group_velocity(p: MomentumPoint, branch: Branch, axis: Axis, coin: &CoinMatrix) -> Result<f64> {
    velocities(p.a, p.b, coin.parameter().c())
        .map(|(va, vb)| {
            let v = if axis == Axis::A { va } else { vb };
            if branch == Branch::Two { v } else { -v }
        })
        .ok_or(QwalkError::DegenerateMomentum { a: p.a, b: p.b, what: "group velocity denominator vanishes" })
}

/// Branch-2 velocities (v_a, v_b).
fn velocities(a: f64, b: f64, c: f64) -> Option<(f64, f64)> {
    let (ha, hb) = (0.5 * (a + b), 0.5 * (a - b));
    let z2 = 2.0 * z_of(a, b, c);
    let den = 4.0 - z2 * z2;
    if den <= DEGENERACY_GUARD {
        return None;
    }
    let den = den.sqrt();
    let (p, q) = ((1.0 + c) * ha.sin(), (1.0 - c) * hb.sin());
    Some((-(p + q) / den, -(p - q) / den))
}

/// lim E[(X_t/t)^r1 (Y_t/t)^r2] as a torus average.
///
/// The branch weights w_j = |⟨v_j|Ψ̂₀⟩|² come from w₁ (closed-form v₁),
/// w₂ + w₃ = 1 − w₁ and w₂ − w₃ = Im⟨Ψ̂₀|U|Ψ̂₀⟩/sin ν. This avoids
/// diagonalizing U, whose two moving eigenvalues collide at −1 on the curve
/// z = 0. Branch 3 moves with the opposite velocity of branch 2.
pub fn limit_moment(r1: u32, r2: u32, coin: &CoinMatrix, init: &InitialCoinState) -> Result<Estimate> {
    if r1 + r2 > MAX_MOMENT_ORDER {
        return Err(QwalkError::MomentOrder { r1, r2, max: MAX_MOMENT_ORDER });
    }
    let param = coin.parameter();
    let c = param.c();
    let psi = init.as_array();
    let order = r1 + r2;
    let [est] = torus_mean(
        &|a: f64, b: f64| {
            let Some(v1) = v1_at(a, b, &param) else { return [0.0] };
            let Some((va, vb)) = velocities(a, b, c) else { return [0.0] };
            let ov: Complex64 = (0..3).map(|k| v1[k].conj() * psi[k]).sum();
            let w1 = ov.norm_sqr();
            let moving = if order % 2 == 0 {
                1.0 - w1
            } else {
                let u = step_matrix(MomentumPoint { a, b }, coin);
                let upsi = u.apply(&psi);
                let expect: Complex64 = (0..3).map(|k| psi[k].conj() * upsi[k]).sum();
                let nu = 2.0 * z_of(a, b, c).clamp(-1.0, 1.0).acos();
                let sn = nu.sin();
                if sn == 0.0 { 0.0 } else { expect.im / sn }
            };
            let rest = if order == 0 { w1 } else { 0.0 };
            [rest + va.powi(r1 as i32) * vb.powi(r2 as i32) * moving]
        },
        TORUS_ORDER,
    );
    est.check(MOMENT_QUADRATURE_TARGET)?;
    Ok(est)
}

/// Σ x^r1 y^r2 P(x, y), divided by t^(r1+r2) when `rescaled`.
pub fn empirical_moment(dist: &Distribution2D, r1: u32, r2: u32, rescaled: bool) -> f64 {
    let terms: Vec<f64> = dist
        .iter()
        .map(|(x, y, p)| (x as f64).powi(r1 as i32) * (y as f64).powi(r2 as i32) * p)
        .collect();
    let m = pairwise_sum(&terms);
    if rescaled && dist.time() > 0 {
        m / (dist.time() as f64).powi((r1 + r2) as i32)
    } else {
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qwalk_core::build_coin;

    fn half() -> CoinMatrix {
        build_coin(PI / 2.0).unwrap()
    }

    #[test]
    fn identity_at_origin() {
        let u = step_matrix(MomentumPoint::new(0.0, 0.0).unwrap(), &CoinMatrix::grover());
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((u.0[i][j] - want).norm() < 1e-15);
            }
        }
        assert_eq!(eigenphases(MomentumPoint::new(0.0, 0.0).unwrap(), &half()), [0.0, 0.0, -0.0]);
    }

    #[test]
    fn momentum_range() {
        assert!(MomentumPoint::new(PI, 0.0).is_err());
        assert!(MomentumPoint::new(-PI, 0.0).is_ok());
        let w = MomentumPoint::wrapped(PI + 0.5, -3.0 * PI);
        assert!((w.a() - (-PI + 0.5)).abs() < 1e-15 && w.b() == -PI);
    }

    #[test]
    fn v1_degenerate_at_origin() {
        let p = MomentumPoint::new(0.0, 0.0).unwrap();
        assert!(matches!(eigenvector_v1(p, &half()), Err(QwalkError::DegenerateMomentum { .. })));
    }

    #[test]
    fn velocity_example() {
        let p = MomentumPoint::new(PI / 2.0, 0.0).unwrap();
        let v = group_velocity(p, Branch::Two, Axis::A, &half()).unwrap();
        assert!((v + 1.0).abs() < 1e-15);
        assert_eq!(group_velocity(p, Branch::Three, Axis::A, &half()).unwrap(), -v);
    }

    #[test]
    fn moment_order_is_bounded() {
        assert!(matches!(
            limit_moment(4, 3, &half(), &InitialCoinState::rest()),
            Err(QwalkError::MomentOrder { .. })
        ));
    }

    #[test]
    fn low_order_limit_moments() {
        let rest = InitialCoinState::rest();
        let m0 = limit_moment(0, 0, &half(), &rest).unwrap();
        assert!((m0.value - 1.0).abs() < 1e-8);
        let m1 = limit_moment(1, 0, &half(), &rest).unwrap();
        assert!(m1.value.abs() < 1e-8);
        let m2 = limit_moment(2, 0, &half(), &rest).unwrap();
        assert!((m2.value - 1.0 / PI).abs() < 1e-6, "{m2:?}");
    }
}
