//! The lattice Green-type function F(x, y) and the stencil formulas for the
//! asymptotic amplitude.
//!
//! The integral defining F diverges logarithmically (the integrand behaves
//! like 1/r² at the origin of momentum space, and 1/√(w₁² − 1) like 1/k in
//! the single-integral form). Every stencil below has coefficients summing to
//! zero, so only differences of F enter. Both representations therefore
//! compute F̃(x, y) = F(x, y) − F(0, 0), with F̃(0, 0) = 0.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use qwalk_core::quadrature::{torus_mean, Adaptive, Estimate};
use qwalk_core::{CoinParameter, InitialCoinState, Result};

/// Error budget for either representation.
pub const F_QUADRATURE_TARGET: f64 = 1e-10;

const TORUS_ORDER: usize = 64;

/// Double-integral evaluation with its imaginary part, which is zero in
/// exact arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FDouble {
    pub value: Estimate,
    pub imaginary: f64,
}

/// F̃(x, y) from the torus integral.
pub fn f_double(x: i64, y: i64, coin: &CoinParameter) -> Result<FDouble> {
    let c = coin.c();
    let (xf, yf) = (x as f64, y as f64);
    let [re, im] = torus_mean(
        &|a: f64, b: f64| {
            let sa = (0.25 * (a + b)).sin();
            let sb = (0.25 * (a - b)).sin();
            let one_minus_z = (1.0 + c) * sa * sa + (1.0 - c) * sb * sb;
            let z = 1.0 - one_minus_z;
            let n1 = 16.0 * one_minus_z * (1.0 + z);
            let phase = a * xf + b * yf;
            let h = (0.5 * phase).sin();
            [-2.0 * h * h / n1, phase.sin() / n1]
        },
        TORUS_ORDER,
    );
    re.check(F_QUADRATURE_TARGET)?;
    Ok(FDouble { value: re, imaginary: im.value })
}

/// F̃(x, y) from the single integral over k ∈ [0, π/2].
pub fn f_single(x: i64, y: i64, coin: &CoinParameter) -> Result<Estimate> {
    let c = coin.c();
    let m = (x + y) as f64;
    let n = (x - y).unsigned_abs() as usize;
    let integrand = |k: f64| {
        let ck = k.cos();
        let sk = (0.5 * k).sin();
        let w1 = (2.0 - (1.0 + c) * ck) / (1.0 - c);
        let w1m1 = 2.0 * (1.0 + c) * sk * sk / (1.0 - c);
        let s1 = (w1m1 * (w1 + 1.0)).sqrt();
        let r1 = w1 - s1;
        let w2 = (-2.0 - (1.0 + c) * ck) / (1.0 - c);
        let s2 = (w2 * w2 - 1.0).sqrt();
        let r2 = w2 + s2;
        let cm = (m * k).cos();
        let hm = (0.5 * m * k).sin();

        // (cos(mk) r₁ⁿ − 1)/s₁ without the 1/s₁ blow-up:
        // (r₁ − 1)/s₁ = s₁/(w₁ + 1) − 1 and r₁ⁿ − 1 = (r₁ − 1) Σ_{i<n} r₁ⁱ.
        let geometric: f64 = (0..n).scan(1.0, |p, _| {
            let v = *p;
            *p *= r1;
            Some(v)
        }).sum();
        let t1 = cm * (s1 / (w1 + 1.0) - 1.0) * geometric - 2.0 * hm * hm / s1;
        let t2 = (cm * r2.powi(n as i32) - 1.0) / s2;
        t1 + t2
    };
    let est = Adaptive::new(1e-15, 1e-13).integrate(integrand, 0.0, 0.5 * PI);
    let scale = 1.0 / (8.0 * PI * (1.0 - c));
    let est = Estimate { value: est.value * scale, abs_error: est.abs_error * scale };
    est.check(F_QUADRATURE_TARGET)?;
    Ok(est)
}

fn a_fn(coin: &CoinParameter, z1: Complex64, z2: Complex64) -> Complex64 {
    z1 * (SQRT_2 * coin.s()) + z2 * (1.0 + coin.c())
}

fn b_fn(coin: &CoinParameter, z1: Complex64, z2: Complex64) -> Complex64 {
    z1 * (SQRT_2 * coin.s()) - z2 * (1.0 - coin.c())
}

/// lim ψ_t(x, y) from the stencil formulas, evaluated with the
/// single-integral F̃.
pub fn asymptotic_amplitude(
    x: i64,
    y: i64,
    init: &InitialCoinState,
    coin: &CoinParameter,
) -> Result<[Complex64; 3]> {
    let mut table = [[0.0; 3]; 3];
    for (i, row) in table.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = f_single(x + i as i64 - 1, y + j as i64 - 1, coin)?.value;
        }
    }
    let f = |dx: i64, dy: i64| table[(dx + 1) as usize][(dy + 1) as usize];
    let (al, be, ga) = (init.alpha, init.beta, init.gamma);
    let a = |z1, z2| a_fn(coin, z1, z2);
    let b = |z1, z2| b_fn(coin, z1, z2);
    let (s, c) = (coin.s(), coin.c());

    let e0 = (-a(al, be) * f(-1, 0) - b(ga, be) * f(-1, 1)
        + (a(al, be) + b(al, be)) * f(0, 0)
        + (a(ga, be) + b(ga, be)) * f(0, 1)
        - b(al, be) * f(1, 0)
        - a(ga, be) * f(1, 1))
        * (SQRT_2 * s);
    let e1 = (-a(al, be) * f(-1, -1) - b(ga, be) * f(-1, 0) + b(al, be) * f(0, -1)
        + a(al + ga, be * 2.0) * f(0, 0)
        + b(ga, be) * f(0, 1)
        - b(al, be) * f(1, 0)
        - a(ga, be) * f(1, 1))
        * (1.0 + c)
        - (-a(al, be) * f(-1, 0) - b(ga, be) * f(-1, 1) + a(al, be) * f(0, -1)
            + b(al + ga, be * 2.0) * f(0, 0)
            + a(ga, be) * f(0, 1)
            - b(al, be) * f(1, -1)
            - a(ga, be) * f(1, 0))
            * (1.0 - c);
    let e2 = (-a(al, be) * f(-1, -1) - b(ga, be) * f(-1, 0)
        + (a(al, be) + b(al, be)) * f(0, -1)
        + (a(ga, be) + b(ga, be)) * f(0, 0)
        - b(al, be) * f(1, -1)
        - a(ga, be) * f(1, 0))
        * (SQRT_2 * s);
    Ok([e0, e1, e2])
}
