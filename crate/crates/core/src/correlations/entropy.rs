//! Base-2 entropies.

use crate::error::{domain, Result};
use crate::states::DensityMatrix;

/// Values within this distance outside `[0, 1]` are clipped.
pub const CLIP_TOL: f64 = 1e-12;

fn clip_probability(x: f64) -> Result<f64> {
    if !x.is_finite() || !(-CLIP_TOL..=1.0 + CLIP_TOL).contains(&x) {
        return Err(domain(format!("probability {x} outside [0, 1]")));
    }
    Ok(x.clamp(0.0, 1.0))
}

/// `-x log2 x` with `0 log 0 = 0`.
fn eta(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Binary entropy `H(x) = -x log2 x - (1-x) log2 (1-x)`.
pub fn shannon_h(x: f64) -> Result<f64> {
    let x = clip_probability(x)?;
    Ok(eta(x) + eta(1.0 - x))
}

/// `-sum p log2 p` over a list of probabilities.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    p.iter()
        .try_fold(0.0, |acc, &x| Ok(acc + eta(clip_probability(x)?)))
}

/// `-sum lambda log2 lambda` over the eigenvalues of the Hermitian part.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    shannon_entropy(&rho.eigenvalues())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn binary_entropy_values() {
        assert_eq!(shannon_h(0.5).unwrap(), 1.0);
        assert_eq!(shannon_h(0.0).unwrap(), 0.0);
        assert_eq!(shannon_h(1.0).unwrap(), 0.0);
        assert_eq!(shannon_h(-1e-13).unwrap(), 0.0);
        assert!((shannon_h(0.25).unwrap() - 0.811_278_124_459_132_8).abs() < 1e-15);
        assert!(shannon_h(1.1).is_err());
        assert!(shannon_h(f64::NAN).is_err());
    }

    #[test]
    fn von_neumann_values() {
        let pure = DensityMatrix::pure([
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
            0.0.into(),
            0.0.into(),
        ]);
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-12);
        assert!(
            (von_neumann_entropy(&DensityMatrix::maximally_mixed()).unwrap() - 2.0).abs() < 1e-14
        );
        let bad = DensityMatrix::diagonal([1.5, -0.5, 0.0, 0.0]);
        assert!(von_neumann_entropy(&bad).is_err());
    }
}
