//! Partial-transpose and spin-flip entanglement measures on the window,
//! read as two logical qubits `A` (first index) and `B` (second).

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::states::{sorted_eigenvalues, DensityMatrix};

/// Transpose the `B` indices: `<a b|rho|a' b'>` becomes `<a b'|rho|a' b>`.
pub fn partial_transpose_b(rho: &DensityMatrix) -> Matrix4<Complex64> {
    let m = rho.matrix();
    let mut out = Matrix4::zeros();
    for a in 0..2 {
        for b in 0..2 {
            for ap in 0..2 {
                for bp in 0..2 {
                    out[(2 * a + bp, 2 * ap + b)] = m[(2 * a + b, 2 * ap + bp)];
                }
            }
        }
    }
    out
}

/// Sum of the moduli of the negative eigenvalues of the partial transpose.
///
/// Equals `(||rho^T_B||_1 - Tr rho) / 2`, which is `(||rho^T_B||_1 - 1) / 2`
/// at unit trace.
pub fn negativity(rho: &DensityMatrix) -> f64 {
    let pt = partial_transpose_b(rho);
    let h = (pt + pt.adjoint()) * Complex64::new(0.5, 0.0);
    sorted_eigenvalues(&h)
        .iter()
        .filter(|&&l| l < 0.0)
        .map(|l| -l)
        .sum()
}

/// `log2(1 + 2 N)`.
pub fn log_negativity(rho: &DensityMatrix) -> f64 {
    (1.0 + 2.0 * negativity(rho)).log2()
}

/// `sigma_y (x) sigma_y`.
pub fn sigma_yy() -> Matrix4<Complex64> {
    let mut y = Matrix4::zeros();
    y[(0, 3)] = Complex64::new(-1.0, 0.0);
    y[(1, 2)] = Complex64::new(1.0, 0.0);
    y[(2, 1)] = Complex64::new(1.0, 0.0);
    y[(3, 0)] = Complex64::new(-1.0, 0.0);
    y
}

/// Spin-flipped state `(sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y)`.
pub fn spin_flip(rho: &DensityMatrix) -> Matrix4<Complex64> {
    let y = sigma_yy();
    y * rho.matrix().conjugate() * y
}

/// Hermitian square root with negative eigenvalues clipped to zero.
pub(crate) fn psd_sqrt(h: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let eig = SymmetricEigen::new(*h);
    let d = Matrix4::from_diagonal(
        &eig.eigenvalues
            .map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0)),
    );
    eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// Wootters concurrence. The square roots of the eigenvalues of
/// `rho rho~` are taken as the singular values of
/// `sqrt(rho) (sigma_y (x) sigma_y) sqrt(rho)*`, which avoids square roots of
/// eigenvalues near zero.
pub fn concurrence(rho: &DensityMatrix) -> f64 {
    let s = psd_sqrt(&rho.hermitian_part());
    let m = s * sigma_yy() * s.conjugate();
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    (sv[0] - sv[1] - sv[2] - sv[3]).max(0.0)
}
