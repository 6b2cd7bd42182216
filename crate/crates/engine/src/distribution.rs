use qwalk_core::numeric::pairwise_sum;
use qwalk_core::{LatticeState, LatticeWindow};

/// Site probabilities P_t(x, y).
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution2D {
    time: usize,
    window: LatticeWindow,
    probabilities: Vec<f64>,
}

impl Distribution2D {
    pub fn from_state<const D: usize>(state: &LatticeState<D>) -> Self {
        let probabilities = state
            .amplitudes()
            .iter()
            .map(|v| v.iter().map(|a| a.norm_sqr()).sum())
            .collect();
        Self { time: state.time(), window: state.window(), probabilities }
    }

    /// Build from explicit probabilities in window storage order.
    pub fn from_parts(time: usize, window: LatticeWindow, probabilities: Vec<f64>) -> Self {
        assert_eq!(probabilities.len(), window.len(), "probability buffer does not match window");
        Self { time, window, probabilities }
    }

    pub fn time(&self) -> usize {
        self.time
    }

    pub fn window(&self) -> LatticeWindow {
        self.window
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// P(x, y); zero outside the window.
    pub fn get(&self, x: i64, y: i64) -> f64 {
        self.window.index(x, y).map_or(0.0, |i| self.probabilities[i])
    }

    pub fn total(&self) -> f64 {
        pairwise_sum(&self.probabilities)
    }

    /// (x, y, p) in storage order: x ascending, then y.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, f64)> + '_ {
        self.window.sites().zip(&self.probabilities).map(|((x, y), &p)| (x, y, p))
    }

    /// Site of the largest probability; the first one in storage order on ties.
    pub fn argmax(&self) -> (i64, i64) {
        let mut best = (0, 0, f64::NEG_INFINITY);
        for (x, y, p) in self.iter() {
            if p > best.2 {
                best = (x, y, p);
            }
        }
        (best.0, best.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qwalk_core::{initial_state, InitialCoinState};

    #[test]
    fn delta_at_origin() {
        let s = initial_state(&InitialCoinState::rest()).with_half_width(2);
        let d = Distribution2D::from_state(&s);
        assert_eq!(d.get(0, 0), 1.0);
        assert_eq!(d.total(), 1.0);
        assert_eq!(d.argmax(), (0, 0));
        assert_eq!(d.iter().filter(|t| t.2 > 0.0).count(), 1);
    }
}
