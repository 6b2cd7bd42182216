//! Domain types for the three-state alternate quantum walk on ℤ² and the
//! four-state Grover walk, plus the numerical primitives shared by the
//! other crates.

pub mod coin;
pub mod error;
pub mod four_state;
pub mod lattice;
pub mod numeric;
pub mod quadrature;
pub mod state;

pub use coin::{build_coin, CoinMatrix, CoinParameter};
pub use error::{QwalkError, Result};
pub use four_state::{grover_coin4, FourStateSpec, FOUR_STATE_SHIFTS};
pub use lattice::LatticeWindow;
pub use num_complex::Complex64;
pub use quadrature::Estimate;
pub use state::{initial_state, make_initial, FourWalkState, InitialCoinState, LatticeState, WalkState};
