//! Exact time evolution on a dense lattice window.
//!
//! Each step only touches the square that can hold the support, and rows are
//! processed in parallel with no cross-row reductions, so results do not
//! depend on the thread count.

mod distribution;
mod four_state;
mod three_state;

pub use distribution::Distribution2D;
pub use four_state::{four_state_evolve, four_state_run, four_state_step, FourStateWalk};
pub use three_state::{evolve, return_probability_series, step, ThreeStateWalk};

/// Probability distribution of any lattice state.
pub fn distribution<const D: usize>(state: &qwalk_core::LatticeState<D>) -> Distribution2D {
    Distribution2D::from_state(state)
}
