//! Limit theorems for the three-state alternate walk: the long-time return
//! probability, the rescaled limit law and the lattice function F(x, y).

mod density;
mod fxy;
mod origin;

pub use density::{
    continuous_density, in_support, xi, LimitDensity, DENSITY_QUADRATURE_TARGET,
};
pub use fxy::{asymptotic_amplitude, f_double, f_single, FDouble, F_QUADRATURE_TARGET};
pub use origin::{
    asymptotic_origin, delta_coefficient, delta_mass, folded_g, g_functions, origin_amplitude,
    return_probability_limit, GTriple,
};
