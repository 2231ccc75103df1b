//! Damping models and time evolution of the window density matrix.

mod analytic;
mod damping;
pub mod errata;
mod ode;
mod trajectory;

pub use analytic::{evolve_analytic, evolve_analytic_vacuum};
pub use damping::{
    accumulated_theta, gamma_kernel, gamma_nonmarkov, gamma_nonmarkov_derivative,
    instantaneous_rate, kernel_accumulated, DampingModel, MAX_EXPONENT,
};
pub use ode::{
    evolve_ode, ode_rhs, rhs_with_rate, uniform_grid, ClosureMode, CoefficientSet, EvolutionParams,
    DEFAULT_SUBSTEPS,
};
pub use trajectory::Trajectory;
