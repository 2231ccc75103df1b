//! Density matrices on the four-dimensional two-mode Fock window.
//!
//! The window basis is ordered as
//! `{|n1,m1>, |n1,m1+1>, |n1+1,m1>, |n1+1,m1+1>}`, which is read as the
//! logical two-qubit basis `{|00>, |01>, |10>, |11>}` by the correlation and
//! teleportation code. Index `0..4` throughout the crate refers to that order.

mod amplitudes;
mod text;

pub use amplitudes::{
    coherent_amplitudes_paper, projection_amplitudes, Amplitudes, CoherentAmplitudes,
};

use std::fmt;

use nalgebra::{Matrix4, SymmetricEigen, Vector4};
use num_complex::Complex64;

use crate::error::{domain, Result};

/// Default tolerance for physicality checks.
pub const DEFAULT_TOL: f64 = 1e-10;

const HBAR: f64 = 1.054_571_817e-34;
const BOLTZMANN: f64 = 1.380_649e-23;

/// Base Fock indices of the two cavities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FockWindow {
    pub n1: u32,
    pub m1: u32,
}

impl FockWindow {
    pub const fn new(n1: u32, m1: u32) -> Self {
        Self { n1, m1 }
    }

    /// Absolute photon numbers `(n_A, n_B)` of window basis state `index`.
    pub fn fock_indices(&self, index: usize) -> (u32, u32) {
        let a = (index >> 1) as u32;
        let b = (index & 1) as u32;
        (self.n1 + a, self.m1 + b)
    }
}

/// Complex 4x4 matrix over the window basis.
///
/// Construction does not enforce physicality; trace decays below one for
/// leaky truncations. Use [`validate`] for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Matrix4<Complex64>);

impl DensityMatrix {
    pub fn from_matrix(m: Matrix4<Complex64>) -> Self {
        Self(m)
    }

    pub fn zeros() -> Self {
        Self(Matrix4::zeros())
    }

    /// `I/4`.
    pub fn maximally_mixed() -> Self {
        Self(Matrix4::identity() * Complex64::new(0.25, 0.0))
    }

    /// Projector onto a pure state with the given amplitudes (not renormalized).
    pub fn pure(amps: [Complex64; 4]) -> Self {
        let v = Vector4::from(amps);
        Self(v * v.adjoint())
    }

    /// Diagonal state with real populations.
    pub fn diagonal(p: [f64; 4]) -> Self {
        let mut m = Matrix4::zeros();
        for (i, &x) in p.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix4<Complex64> {
        self.0
    }

    /// Entry at zero-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.0[(row, col)] = value;
    }

    /// Real population of basis state `i`.
    pub fn population(&self, i: usize) -> f64 {
        self.0[(i, i)].re
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn hermitian_part(&self) -> Matrix4<Complex64> {
        (self.0 + self.0.adjoint()) * Complex64::new(0.5, 0.0)
    }

    /// Replace the matrix by its Hermitian part in place.
    pub fn symmetrize(&mut self) {
        self.0 = self.hermitian_part();
    }

    /// Largest entrywise modulus of `rho - rho^dagger`.
    pub fn hermiticity_defect(&self) -> f64 {
        (self.0 - self.0.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        sorted_eigenvalues(&self.hermitian_part())
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        (self.0 - other.0)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl fmt::Display for DensityMatrix {
    /// Plain-text block: four lines of four `re+imj` entries.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_block(&self.0, f)
    }
}

impl std::str::FromStr for DensityMatrix {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        text::parse_block(s).map(Self)
    }
}

pub(crate) fn sorted_eigenvalues(h: &Matrix4<Complex64>) -> [f64; 4] {
    let eig = SymmetricEigen::new(*h);
    let mut vals = [
        eig.eigenvalues[0],
        eig.eigenvalues[1],
        eig.eigenvalues[2],
        eig.eigenvalues[3],
    ];
    vals.sort_by(|a, b| a.total_cmp(b));
    vals
}

/// Result of [`validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateValidationReport {
    pub hermiticity_defect: f64,
    pub min_eigenvalue: f64,
    pub trace: f64,
    pub is_physical: bool,
}

pub fn validate(rho: &DensityMatrix, tol: f64) -> StateValidationReport {
    let hermiticity_defect = rho.hermiticity_defect();
    let min_eigenvalue = rho.min_eigenvalue();
    let trace = rho.trace();
    let is_physical =
        hermiticity_defect <= tol && min_eigenvalue >= -tol && (trace - 1.0).abs() <= tol;
    StateValidationReport {
        hermiticity_defect,
        min_eigenvalue,
        trace,
        is_physical,
    }
}

/// Bose occupation `1/(exp(hbar*nu/(k_B*T)) - 1)` for temperature in kelvin
/// and angular frequency in rad/s.
pub fn thermal_occupation(temperature: f64, frequency: f64) -> Result<f64> {
    if temperature.is_nan() || temperature < 0.0 {
        return Err(domain(format!(
            "temperature must be >= 0, got {temperature}"
        )));
    }
    if frequency.is_nan() || frequency <= 0.0 {
        return Err(domain(format!("frequency must be > 0, got {frequency}")));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    Ok(occupation_from_ratio(
        HBAR * frequency / (BOLTZMANN * temperature),
    ))
}

/// Bose occupation for a given `hbar*nu/(k_B*T)`.
pub fn occupation_from_ratio(ratio: f64) -> f64 {
    1.0 / ratio.exp_m1()
}

const NORM_TOL: f64 = 1e-12;

/// `a|n1,m1> + d|n1+1,m1+1>`.
pub fn build_epr(a: Complex64, d: Complex64) -> Result<DensityMatrix> {
    let norm = a.norm_sqr() + d.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(domain(format!("|a|^2 + |d|^2 = {norm}, expected 1")));
    }
    let zero = Complex64::new(0.0, 0.0);
    Ok(DensityMatrix::pure([a, zero, zero, d]))
}

/// `b|n1,m1+1> + c|n1+1,m1>`.
pub fn build_noon(b: Complex64, c: Complex64) -> Result<DensityMatrix> {
    let norm = b.norm_sqr() + c.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(domain(format!("|b|^2 + |c|^2 = {norm}, expected 1")));
    }
    let zero = Complex64::new(0.0, 0.0);
    Ok(DensityMatrix::pure([zero, b, c, zero]))
}

/// Pure state from normalized amplitudes `(a, b, c, d)`.
pub fn build_from_amplitudes(amps: &Amplitudes) -> Result<DensityMatrix> {
    let norm = amps.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(domain(format!(
            "amplitudes have squared norm {norm}, expected 1"
        )));
    }
    Ok(DensityMatrix::pure(amps.as_array()))
}
