//! Gauss–Legendre rules, 1D adaptive integration and a torus rule that is
//! safe for integrands singular at the origin of momentum space.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{QwalkError, Result};
use crate::numeric::pairwise_sum;

/// Integral value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
}

impl Estimate {
    /// The value, provided the error estimate is within `target`.
    pub fn check(self, target: f64) -> Result<f64> {
        if self.abs_error.is_finite() && self.abs_error <= target && self.value.is_finite() {
            Ok(self.value)
        } else {
            Err(QwalkError::QuadratureNonConvergence { estimate: self.abs_error, target })
        }
    }
}

/// n-point Gauss–Legendre rule on [−1, 1], nodes ascending.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "Gauss–Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for iter in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 || iter == 99 {
                    dp = legendre(n, x).1;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[n - 1 - i] = x;
            nodes[i] = -x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// ∫ₐᵇ f on the mapped rule.
    pub fn integrate(&self, f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> f64 {
        let h = 0.5 * (b - a);
        let m = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(m + h * x);
        }
        acc * h
    }
}

/// P_n(x) and P_n'(x).
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Global adaptive bisection. Each panel is integrated whole and as two
/// halves; their difference is the panel's error estimate.
#[derive(Debug, Clone)]
pub struct Adaptive {
    rule: GaussLegendre,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for Adaptive {
    fn default() -> Self {
        Self::new(1e-13, 1e-12)
    }
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then(other.a.total_cmp(&self.a))
    }
}

impl Adaptive {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self { rule: GaussLegendre::new(15), abs_tol, rel_tol, max_panels: 4000 }
    }

    fn panel(&self, f: &mut impl FnMut(f64) -> f64, a: f64, b: f64, whole: f64) -> Panel {
        let m = 0.5 * (a + b);
        let left = self.rule.integrate(f, a, m);
        let right = self.rule.integrate(f, m, b);
        Panel { a, b, left, right, err: (whole - left - right).abs() }
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64, a: f64, b: f64) -> Estimate {
        if a == b {
            return Estimate { value: 0.0, abs_error: 0.0 };
        }
        let whole = self.rule.integrate(&mut f, a, b);
        let mut heap = BinaryHeap::new();
        heap.push(self.panel(&mut f, a, b, whole));
        let mut value = heap.peek().map_or(0.0, |p| p.left + p.right);
        let mut err = heap.peek().map_or(0.0, |p| p.err);
        while err > self.abs_tol.max(self.rel_tol * value.abs()) && heap.len() < self.max_panels {
            let worst = heap.pop().expect("heap is never empty here");
            let m = 0.5 * (worst.a + worst.b);
            let l = self.panel(&mut f, worst.a, m, worst.left);
            let r = self.panel(&mut f, m, worst.b, worst.right);
            value += (l.left + l.right + r.left + r.right) - (worst.left + worst.right);
            err += l.err + r.err - worst.err;
            heap.push(l);
            heap.push(r);
        }
        let mut panels = heap.into_vec();
        panels.sort_by(|p, q| p.a.total_cmp(&q.a));
        let values: Vec<f64> = panels.iter().map(|p| p.left + p.right).collect();
        let errs: Vec<f64> = panels.iter().map(|p| p.err).collect();
        let _ = value;
        Estimate { value: pairwise_sum(&values), abs_error: pairwise_sum(&errs) }
    }
}

/// Product rule for averages over the torus [−π, π)².
///
/// Each quadrant is cut along its diagonal and each triangle is Duffy-mapped
/// so that the origin corner is collapsed, which cancels a 1/r singularity
/// and makes direction-dependent limits at the origin harmless. No node lies
/// on the axes a = 0 or b = 0.
#[derive(Debug, Clone)]
pub struct TorusRule {
    nodes: Vec<(f64, f64, f64)>,
}

impl TorusRule {
    pub fn new(order: usize) -> Self {
        let gl = GaussLegendre::new(order);
        let unit: Vec<(f64, f64)> =
            gl.nodes().iter().zip(gl.weights()).map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w)).collect();
        let scale = PI * PI / (4.0 * PI * PI);
        let mut nodes = Vec::with_capacity(8 * order * order);
        for &(sa, sb) in &[(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
            for swap in [false, true] {
                for &(u, wu) in &unit {
                    for &(v, wv) in &unit {
                        let (p, q) = (PI * u, PI * u * v);
                        let (a, b) = if swap { (q, p) } else { (p, q) };
                        nodes.push((sa * a, sb * b, scale * u * wu * wv));
                    }
                }
            }
        }
        Self { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[(f64, f64, f64)] {
        &self.nodes
    }

    /// (1/4π²)∬ f over the torus, for K integrands at once.
    pub fn mean<const K: usize, F>(&self, f: &F) -> [f64; K]
    where
        F: Fn(f64, f64) -> [f64; K] + Sync,
    {
        let terms: Vec<[f64; K]> = self
            .nodes
            .par_iter()
            .map(|&(a, b, w)| f(a, b).map(|v| v * w))
            .collect();
        std::array::from_fn(|k| {
            let column: Vec<f64> = terms.iter().map(|t| t[k]).collect();
            pairwise_sum(&column)
        })
    }
}

/// Torus average at two orders; the finer value is kept and their difference
/// is the error estimate.
pub fn torus_mean<const K: usize, F>(f: &F, order: usize) -> [Estimate; K]
where
    F: Fn(f64, f64) -> [f64; K] + Sync,
{
    let fine = TorusRule::new(order).mean(f);
    let coarse = TorusRule::new((3 * order).div_ceil(4)).mean(f);
    std::array::from_fn(|k| Estimate { value: fine[k], abs_error: (fine[k] - coarse[k]).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let gl = GaussLegendre::new(10);
        for deg in 0..20 {
            let got = gl.integrate(&mut |x: f64| x.powi(deg), 0.0, 1.0);
            assert!((got - 1.0 / (deg as f64 + 1.0)).abs() < 1e-15, "degree {deg}");
        }
        let w: f64 = GaussLegendre::new(64).weights().iter().sum();
        assert!((w - 2.0).abs() < 1e-14);
    }

    #[test]
    fn odd_rules_have_a_centre_node() {
        let gl = GaussLegendre::new(7);
        assert_eq!(gl.nodes()[3], 0.0);
        assert!(gl.nodes().windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn adaptive_handles_sqrt_endpoint() {
        let est = Adaptive::default().integrate(|x| x.sqrt(), 0.0, 1.0);
        assert!((est.value - 2.0 / 3.0).abs() < 1e-12, "{est:?}");
        assert!(est.check(1e-12).is_ok());
    }

    #[test]
    fn adaptive_reports_failure() {
        let mut tight = Adaptive::new(1e-30, 0.0);
        tight.max_panels = 4;
        let est = tight.integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0);
        assert!(matches!(est.check(1e-12), Err(QwalkError::QuadratureNonConvergence { .. })));
    }

    #[test]
    fn torus_rule_averages() {
        let rule = TorusRule::new(24);
        let [one] = rule.mean(&|_, _| [1.0]);
        assert!((one - 1.0).abs() < 1e-14);
        let [c] = rule.mean(&|a: f64, b: f64| [(a * b).cos()]);
        // (1/π²)∫₀^π∫₀^π cos(ab) = (1/π²)∫₀^π sin(πa)/a da = Si(π²)/π².
        let si_pi2 = 1.6647491833365633; // Si(π²)
        assert!((c - si_pi2 / (PI * PI)).abs() < 1e-10, "{c}");
        assert!(rule.nodes().iter().all(|&(a, b, _)| a != 0.0 && b != 0.0));
    }

    #[test]
    fn torus_handles_inverse_radius() {
        // (1/4π²)∬ 1/√(a²+b²) over [−π,π)² = 2 asinh(1)/π.
        let [est] = torus_mean(&|a: f64, b: f64| [1.0 / a.hypot(b)], 32);
        let want = 2.0 * 1f64.asinh() / PI;
        assert!((est.value - want).abs() < 1e-13, "{est:?}");
        assert!(est.abs_error < 1e-12);
    }
}
