//! Negativity of walk states.
//!
//! Coin–position entanglement of the pure state comes from the Schmidt
//! coefficients of the coin × site coefficient matrix. Entanglement between
//! the x and y coordinates uses the reduced state ρ_xy = Tr_coin |Ψ⟩⟨Ψ| and
//! the trace norm of its partial transpose. Dense matrices are restricted to
//! the tight support window |x|, |y| ≤ t.

use faer::{Mat, Side};
use num_complex::Complex64;

use qwalk_core::numeric::pairwise_sum;
use qwalk_core::{CoinMatrix, FourStateSpec, InitialCoinState, LatticeState, QwalkError, Result};
use qwalk_engine::{FourStateWalk, ThreeStateWalk};

/// Default largest time for x–y negativity; ρ_xy is (2t+1)² × (2t+1)².
pub const DEFAULT_DENSE_CAP: usize = 30;

const HERMITIAN_TOLERANCE: f64 = 1e-12;
const TRACE_TOLERANCE: f64 = 1e-10;
const NORM_TOLERANCE: f64 = 1e-10;

/// Thread count for the dense eigensolvers; 1 runs sequentially.
pub fn set_parallelism(threads: usize) {
    faer::set_global_parallelism(if threads <= 1 { faer::Par::Seq } else { faer::Par::rayon(threads) });
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Which cut of the walker's Hilbert space is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bipartition {
    /// Coin versus lattice position, on the pure state.
    CoinPosition,
    /// x versus y, on the reduced state after tracing out the coin.
    XY,
}

impl Bipartition {
    /// (d₁, d₂) for a walk with `coin_dim` coin states on a window of
    /// half-width `half_width`.
    pub fn dims(&self, coin_dim: usize, half_width: usize) -> (usize, usize) {
        let side = 2 * half_width + 1;
        match self {
            Self::CoinPosition => (side * side, coin_dim),
            Self::XY => (side, side),
        }
    }
}

/// Hermitian, unit-trace operator on a bipartite space of dims (d₁, d₂);
/// basis index i·d₂ + j.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    dims: (usize, usize),
    matrix: Mat<Complex64>,
}

impl DensityOperator {
    /// Checks shape, Hermiticity and trace. Positivity is available through
    /// [`Self::min_eigenvalue`], which costs a full eigensolve.
    pub fn new(dims: (usize, usize), matrix: Mat<Complex64>) -> Result<Self> {
        let n = dims.0 * dims.1;
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(QwalkError::Eigensolver(format!(
                "matrix is {}x{}, dims {dims:?} need {n}x{n}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        for j in 0..n {
            for i in 0..=j {
                let d = (matrix[(i, j)] - matrix[(j, i)].conj()).norm();
                if d > HERMITIAN_TOLERANCE {
                    return Err(QwalkError::Eigensolver(format!("not Hermitian at ({i}, {j}): {d:e}")));
                }
            }
        }
        let tr: f64 = pairwise_sum(&(0..n).map(|i| matrix[(i, i)].re).collect::<Vec<_>>());
        if (tr - 1.0).abs() > TRACE_TOLERANCE {
            return Err(QwalkError::NotNormalized(tr));
        }
        Ok(Self { dims, matrix })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn matrix(&self) -> &Mat<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        pairwise_sum(&(0..self.matrix.nrows()).map(|i| self.matrix[(i, i)].re).collect::<Vec<_>>())
    }

    /// Eigenvalues in nondecreasing order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.first().copied().unwrap_or(0.0))
    }
}

fn is_real(m: &Mat<Complex64>) -> bool {
    (0..m.ncols()).all(|j| (0..m.nrows()).all(|i| m[(i, j)].im == 0.0))
}

/// Eigenvalues of a Hermitian matrix, using the real solver when possible.
fn hermitian_eigenvalues(m: &Mat<Complex64>) -> Result<Vec<f64>> {
    if is_real(m) {
        let r = Mat::<f64>::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)].re);
        return real_eigenvalues(&r);
    }
    m.self_adjoint_eigenvalues(Side::Lower).map_err(|e| QwalkError::Eigensolver(format!("{e:?}")))
}

fn real_eigenvalues(m: &Mat<f64>) -> Result<Vec<f64>> {
    m.self_adjoint_eigenvalues(Side::Lower).map_err(|e| QwalkError::Eigensolver(format!("{e:?}")))
}

fn trace_norm(eigenvalues: &[f64]) -> f64 {
    pairwise_sum(&eigenvalues.iter().map(|l| l.abs()).collect::<Vec<_>>())
}

/// (‖·‖₁ − 1)/(d − 1); zero when a factor is one-dimensional.
fn normalize(trace_norm: f64, d: usize) -> f64 {
    if d <= 1 {
        0.0
    } else {
        (trace_norm - 1.0) / (d as f64 - 1.0)
    }
}

fn check_norm<const D: usize>(state: &LatticeState<D>) -> Result<()> {
    let n = state.norm_sqr();
    if (n - 1.0).abs() > NORM_TOLERANCE {
        return Err(QwalkError::NotNormalized(n));
    }
    Ok(())
}

/// The state restricted to |x|, |y| ≤ t.
fn tight<const D: usize>(state: &LatticeState<D>) -> LatticeState<D> {
    state.cropped(state.time().min(state.window().half_width()))
}

/// Coin–position negativity ((Σσᵢ)² − 1)/(d − 1) of a pure state.
pub fn negativity_pure<const D: usize>(state: &LatticeState<D>) -> Result<f64> {
    check_norm(state)?;
    let s = tight(state);
    let amps = s.amplitudes();
    let sites = amps.len();
    let d = D.min(sites);
    let sigma = if s.is_real() {
        Mat::<f64>::from_fn(D, sites, |c, i| amps[i][c].re).singular_values()
    } else {
        Mat::<Complex64>::from_fn(D, sites, |c, i| amps[i][c]).singular_values()
    }
    .map_err(|e| QwalkError::Eigensolver(format!("{e:?}")))?;
    let sum: f64 = sigma.iter().sum();
    Ok(normalize(sum * sum, d))
}

/// |Ψ⟩⟨Ψ| on position ⊗ coin, over the tight window.
pub fn pure_density_operator<const D: usize>(state: &LatticeState<D>) -> Result<DensityOperator> {
    check_norm(state)?;
    let s = tight(state);
    let v: Vec<Complex64> = s.amplitudes().iter().flat_map(|a| a.iter().copied()).collect();
    let n = v.len();
    DensityOperator::new((s.amplitudes().len(), D), Mat::from_fn(n, n, |i, j| v[i] * v[j].conj()))
}

fn check_cap(t: usize, cap: usize) -> Result<()> {
    if t > cap {
        return Err(QwalkError::DenseCapExceeded { requested: t, cap });
    }
    Ok(())
}

/// Reduced state on x ⊗ y, over the tight window; basis index (x+t)(2t+1) + (y+t).
pub fn rho_xy<const D: usize>(state: &LatticeState<D>, cap: usize) -> Result<DensityOperator> {
    check_norm(state)?;
    let s = tight(state);
    check_cap(s.window().half_width(), cap)?;
    let side = s.window().side();
    let amps = s.amplitudes();
    let n = side * side;
    let m = Mat::from_fn(n, n, |i, j| {
        (0..D).map(|c| amps[i][c] * amps[j][c].conj()).sum::<Complex64>()
    });
    DensityOperator::new((side, side), m)
}

/// Partial transpose on one factor.
pub fn partial_transpose(rho: &DensityOperator, on: Subsystem) -> Mat<Complex64> {
    let (d1, d2) = rho.dims;
    let m = &rho.matrix;
    let n = d1 * d2;
    Mat::from_fn(n, n, |r, c| {
        let (i, j) = (r / d2, r % d2);
        let (k, l) = (c / d2, c % d2);
        match on {
            Subsystem::Second => m[(i * d2 + l, k * d2 + j)],
            Subsystem::First => m[(k * d2 + j, i * d2 + l)],
        }
    })
}

/// (‖ρ^T‖₁ − 1)/(d − 1) with d = min(d₁, d₂).
pub fn negativity_mixed(rho: &DensityOperator, on: Subsystem) -> Result<f64> {
    let pt = partial_transpose(rho, on);
    let eig = hermitian_eigenvalues(&pt)?;
    Ok(normalize(trace_norm(&eig), rho.dims.0.min(rho.dims.1)))
}

/// x–y negativity built straight from the amplitudes, without storing ρ_xy:
/// ρ^{T_y}[(x,y),(x',y')] = Σ_c ψ(x,y',c) ψ(x',y,c)*.
pub fn negativity_xy<const D: usize>(state: &LatticeState<D>, cap: usize) -> Result<f64> {
    check_norm(state)?;
    let s = tight(state);
    check_cap(s.window().half_width(), cap)?;
    let side = s.window().side();
    let amps = s.amplitudes();
    let n = side * side;
    let entry = |r: usize, c: usize| {
        let (x, y) = (r / side, r % side);
        let (xp, yp) = (c / side, c % side);
        let (u, v) = (&amps[x * side + yp], &amps[xp * side + y]);
        (0..D).map(|k| u[k] * v[k].conj()).sum::<Complex64>()
    };
    let real = s.is_real();
    let mut eig = Vec::with_capacity(n);
    for block in blocks(n, |r, c| entry(r, c) != Complex64::ZERO) {
        let m = block.len();
        let at = |i: usize, j: usize| entry(block[i], block[j]);
        if real {
            eig.extend(real_eigenvalues(&Mat::from_fn(m, m, |i, j| at(i, j).re))?);
        } else {
            eig.extend(hermitian_eigenvalues(&Mat::from_fn(m, m, at))?);
        }
    }
    Ok(normalize(trace_norm(&eig), side))
}

/// Index sets of the diagonal blocks of a symmetric sparsity pattern;
/// isolated indices with a zero diagonal are dropped.
fn blocks(n: usize, nonzero: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut parent: Vec<usize> = (0..n).collect();
    let mut live = vec![false; n];
    for r in 0..n {
        for c in r..n {
            if nonzero(r, c) {
                live[r] = true;
                live[c] = true;
                let (a, b) = (root(&mut parent, r), root(&mut parent, c));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in (0..n).filter(|&i| live[i]) {
        let r = root(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

/// Walk whose entanglement is tracked.
#[derive(Debug, Clone)]
pub enum WalkModel {
    ThreeState { coin: CoinMatrix, initial: InitialCoinState },
    FourState(FourStateSpec),
}

impl WalkModel {
    pub fn name(&self) -> &'static str {
        match self {
            Self::ThreeState { .. } => "three-state",
            Self::FourState(_) => "four-state",
        }
    }
}

/// (t, N) for t = 0..=steps.
pub fn negativity_series(
    model: &WalkModel,
    cut: Bipartition,
    steps: usize,
    cap: usize,
) -> Result<Vec<(usize, f64)>> {
    if cut == Bipartition::XY {
        check_cap(steps, cap)?;
    }
    fn measure<const D: usize>(s: &LatticeState<D>, cut: Bipartition, cap: usize) -> Result<f64> {
        match cut {
            Bipartition::CoinPosition => negativity_pure(s),
            Bipartition::XY => negativity_xy(s, cap),
        }
    }
    let mut out = Vec::with_capacity(steps + 1);
    match model {
        WalkModel::ThreeState { coin, initial } => {
            let mut walk = ThreeStateWalk::new(&qwalk_core::initial_state(initial), *coin, steps);
            out.push((0, measure(&walk.state(), cut, cap)?));
            for _ in 0..steps {
                walk.advance()?;
                out.push((walk.time(), measure(&walk.state(), cut, cap)?));
            }
        }
        WalkModel::FourState(spec) => {
            let mut walk = FourStateWalk::new(spec, steps);
            out.push((0, measure(&walk.state(), cut, cap)?));
            for _ in 0..steps {
                walk.advance()?;
                out.push((walk.time(), measure(&walk.state(), cut, cap)?));
            }
        }
    }
    Ok(out)
}
