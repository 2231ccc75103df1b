//! Two-cavity Fock-window dynamics under Markovian and non-Markovian
//! damping, two-qubit correlation measures, joint Wigner negativity and
//! teleportation through the evolved state.

pub mod correlations;
pub mod csvfmt;
pub mod dynamics;
mod error;
pub mod states;
pub mod teleport;
pub mod wigner;

pub use error::{Error, Result};
pub use states::{DensityMatrix, FockWindow};
