//! Joint Wigner function on the window and the negativity volume.

mod field;
mod laguerre;
mod parity;

pub use field::{
    default_extent, negativity_volume, volume_report, wigner_integral, wigner_joint, wigner_slice,
    write_slice_csv, PhaseSpaceGrid, VolumeIntegrator, VolumeReport, WignerField, DEFAULT_POINTS,
    DEFAULT_TOLERANCE, IMAG_TOL,
};
pub use laguerre::laguerre_assoc;
pub use parity::{
    auto_cutoff, displaced_fock_vector, displaced_parity_closed, displaced_parity_oracle,
    displaced_parity_paper, ElementSource,
};
