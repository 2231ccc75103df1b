//! Closed forms for the two sparse families produced by the dynamics:
//! the EPR family (diagonal plus `rho_14`) and the NOON family (diagonal
//! plus `rho_23`).

use crate::error::{Error, Result};
use crate::states::DensityMatrix;

/// Default tolerance on entries that must vanish.
pub const PATTERN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XPattern {
    /// Diagonal and the `(1,4)` coherence.
    Epr,
    /// Diagonal and the `(2,3)` coherence.
    Noon,
    /// Diagonal and both anti-diagonal coherences.
    X,
}

impl XPattern {
    fn allows(self, i: usize, j: usize) -> bool {
        let anti = i + j == 3;
        let outer = matches!((i, j), (0, 3) | (3, 0));
        i == j
            || match self {
                Self::Epr => outer,
                Self::Noon => anti && !outer,
                Self::X => anti,
            }
    }
}

/// Error on the first forbidden entry larger than `tol`.
pub fn check_pattern(rho: &DensityMatrix, pattern: XPattern, tol: f64) -> Result<()> {
    for i in 0..4 {
        for j in 0..4 {
            let magnitude = rho.get(i, j).norm();
            if !pattern.allows(i, j) && magnitude > tol {
                return Err(Error::Pattern {
                    row: i,
                    col: j,
                    magnitude,
                    tol,
                });
            }
        }
    }
    Ok(())
}

pub fn matches_pattern(rho: &DensityMatrix, pattern: XPattern, tol: f64) -> bool {
    check_pattern(rho, pattern, tol).is_ok()
}

fn pops(rho: &DensityMatrix) -> [f64; 4] {
    [0, 1, 2, 3].map(|i| rho.population(i))
}

/// `2 max(0, |rho_14| - sqrt(rho_22 rho_33))`.
pub fn concurrence_x_epr(rho: &DensityMatrix) -> Result<f64> {
    check_pattern(rho, XPattern::Epr, PATTERN_TOL)?;
    let p = pops(rho);
    Ok((2.0 * (rho.get(0, 3).norm() - (p[1] * p[2]).max(0.0).sqrt())).max(0.0))
}

/// `2 max(0, |rho_23| - sqrt(rho_11 rho_44))`.
pub fn concurrence_x_noon(rho: &DensityMatrix) -> Result<f64> {
    check_pattern(rho, XPattern::Noon, PATTERN_TOL)?;
    let p = pops(rho);
    Ok((2.0 * (rho.get(1, 2).norm() - (p[0] * p[3]).max(0.0).sqrt())).max(0.0))
}

/// The NOON-family concurrence in the form `2 max(0, |rho_23| - sqrt(rho_11))`,
/// which drops `rho_44` from under the root and disagrees with the Wootters
/// value whenever `rho_11 > 0`.
pub fn concurrence_x_noon_printed(rho: &DensityMatrix) -> Result<f64> {
    check_pattern(rho, XPattern::Noon, PATTERN_TOL)?;
    let p = pops(rho);
    Ok((2.0 * (rho.get(1, 2).norm() - p[0].max(0.0).sqrt())).max(0.0))
}

/// `max(0, log2[1 - rho_22 - rho_33 + sqrt((rho_22 - rho_33)^2 + 4|rho_14|^2)])`.
pub fn log_negativity_x_epr(rho: &DensityMatrix) -> Result<f64> {
    check_pattern(rho, XPattern::Epr, PATTERN_TOL)?;
    let p = pops(rho);
    let r = ((p[1] - p[2]).powi(2) + 4.0 * rho.get(0, 3).norm_sqr()).sqrt();
    Ok((1.0 - p[1] - p[2] + r).log2().max(0.0))
}

/// `max(0, log2[1 - rho_11 - rho_44 + sqrt((rho_11 - rho_44)^2 + 4|rho_23|^2)])`;
/// with `rho_44 = 0` this is `log2[1 - rho_11 + sqrt(rho_11^2 + 4|rho_23|^2)]`.
pub fn log_negativity_x_noon(rho: &DensityMatrix) -> Result<f64> {
    check_pattern(rho, XPattern::Noon, PATTERN_TOL)?;
    let p = pops(rho);
    let r = ((p[0] - p[3]).powi(2) + 4.0 * rho.get(1, 2).norm_sqr()).sqrt();
    Ok((1.0 - p[0] - p[3] + r).log2().max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{concurrence, log_negativity};
    use num_complex::Complex64;

    fn epr_x(p: [f64; 4], z: Complex64) -> DensityMatrix {
        let mut rho = DensityMatrix::diagonal(p);
        rho.set(0, 3, z);
        rho.set(3, 0, z.conj());
        rho
    }

    fn noon_x(p: [f64; 4], z: Complex64) -> DensityMatrix {
        let mut rho = DensityMatrix::diagonal(p);
        rho.set(1, 2, z);
        rho.set(2, 1, z.conj());
        rho
    }

    #[test]
    fn bell_like_cases() {
        let rho = epr_x([0.5, 0.0, 0.0, 0.5], Complex64::new(0.5, 0.0));
        assert!((concurrence_x_epr(&rho).unwrap() - 1.0).abs() < 1e-15);
        assert!((log_negativity_x_epr(&rho).unwrap() - 1.0).abs() < 1e-15);
        let rho = noon_x([0.0, 0.5, 0.5, 0.0], Complex64::new(0.0, 0.5));
        assert!((concurrence_x_noon(&rho).unwrap() - 1.0).abs() < 1e-15);
        assert!((log_negativity_x_noon(&rho).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn clamp_when_populations_dominate() {
        let rho = epr_x([0.4, 0.3, 0.2, 0.1], Complex64::new(0.05, 0.0));
        assert_eq!(concurrence_x_epr(&rho).unwrap(), 0.0);
        assert_eq!(log_negativity_x_epr(&rho).unwrap(), 0.0);
    }

    #[test]
    fn pattern_violation_reported() {
        let mut rho = epr_x([0.25; 4], Complex64::new(0.1, 0.0));
        rho.set(0, 1, Complex64::new(1e-6, 0.0));
        let err = concurrence_x_epr(&rho).unwrap_err();
        assert!(matches!(err, Error::Pattern { row: 0, col: 1, .. }));
        assert!(concurrence_x_noon(&epr_x([0.25; 4], Complex64::new(0.1, 0.0))).is_err());
        assert!(matches_pattern(&rho, XPattern::Epr, 1e-5));
    }

    #[test]
    fn printed_noon_form_differs_when_ground_population_present() {
        let rho = noon_x([0.1, 0.45, 0.45, 0.0], Complex64::new(0.4, 0.0));
        let wootters = concurrence(&rho);
        assert!((concurrence_x_noon(&rho).unwrap() - wootters).abs() < 1e-12);
        assert!((concurrence_x_noon_printed(&rho).unwrap() - wootters).abs() > 0.1);
        let pure = noon_x([0.0, 0.5, 0.5, 0.0], Complex64::new(0.5, 0.0));
        assert!((concurrence_x_noon_printed(&pure).unwrap() - concurrence(&pure)).abs() < 1e-12);
    }

    #[test]
    fn noon_closed_form_with_upper_population() {
        let rho = noon_x([0.1, 0.3, 0.3, 0.3], Complex64::new(0.25, 0.1));
        assert!((concurrence_x_noon(&rho).unwrap() - concurrence(&rho)).abs() < 1e-12);
        assert!((log_negativity_x_noon(&rho).unwrap() - log_negativity(&rho)).abs() < 1e-12);
    }
}
