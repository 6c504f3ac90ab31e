//! Discrete potential theory under the `π/2` normalisation: Green functions,
//! the potential kernel and Poisson kernels.

mod green;
mod poisson;
mod potential;
mod quadrature;
pub mod solver;

pub use green::{
    green, green_column, green_columns, green_diagonal_entry, green_of_sites, green_with_cap,
    GreenOperator, DEFAULT_DENSE_CAP,
};
pub use poisson::{
    ball_poisson_kernel, harmonic_average, hitting_prob_boundary, poisson_kernel,
    poisson_kernel_from_green, relation_check, PoissonKernel,
};
pub use potential::{PotentialKernel, DEFAULT_CROSSOVER};
pub use quadrature::integrate;
