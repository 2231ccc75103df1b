//! The closed-form vacuum solutions in their originally printed form, kept
//! for comparison against the rate equations.
//!
//! Known differences from the derived propagator:
//! * `rho_22` carries the same exponent `(1+2m)` in both terms, so the
//!   `rho_44` feed cancels and the `e^{-(2+2m)Theta}` term is lost.
//! * `rho_33` is `[m rho_44(0) + rho_33(0)] e^{-(1+2m)Theta}`, which is not
//!   the mirror image of `rho_22`.
//! * `rho_11` folds the `e^{-(2+2m)Theta}` term into `e^{-(1+2m)Theta}`.
//! * `rho_44` is fixed by `1 - rho_11 - rho_22 - rho_33`.

use num_complex::Complex64;

use super::analytic::{evolve_analytic_vacuum, upper_to_hermitian};
use crate::error::{domain, Result};
use crate::states::DensityMatrix;

/// Evaluate the printed solution at `Theta` on the window `n1 = m1 = m1`.
pub fn printed_vacuum_solution(rho0: &DensityMatrix, theta: f64, m1: u32) -> Result<DensityMatrix> {
    if !(theta >= 0.0 && theta.is_finite()) {
        return Err(domain(format!(
            "Theta must be finite and >= 0, got {theta}"
        )));
    }
    let r = rho0.matrix();
    let p = |i: usize, j: usize| r[(i - 1, j - 1)];
    let m = m1 as f64;
    let k = 1.0 + m;
    let e = |rate: f64| (-rate * theta).exp();
    let s0 = p(2, 2) + p(3, 3);

    let r11 = (p(1, 1) + k * s0 + k * k * p(4, 4)) * e(2.0 * m)
        + (k * k * p(4, 4) - k * (s0 + 2.0 * k * p(4, 4))) * e(1.0 + 2.0 * m);
    let r12 = -k * p(3, 4) * e(0.5 * (3.0 + 4.0 * m))
        + (p(1, 2) + k * p(3, 4)) * e(0.5 * (1.0 + 4.0 * m));
    let r13 = -k * p(2, 4) * e(0.5 * (3.0 + 4.0 * m))
        + (p(1, 3) + k * p(2, 4)) * e(0.5 * (1.0 + 4.0 * m));
    let r14 = p(1, 4) * e(2.0 * (1.0 + m));
    let r22 = -k * p(4, 4) * e(1.0 + 2.0 * m) + (p(2, 2) + k * p(4, 4)) * e(1.0 + 2.0 * m);
    let r23 = p(2, 3) * e(1.0 + 2.0 * m);
    let r24 = p(2, 4) * e(0.5 * (3.0 + 4.0 * m));
    let r33 = (m * p(4, 4) + p(3, 3)) * e(1.0 + 2.0 * m);
    let r34 = p(3, 4) * e(0.5 * (3.0 + 4.0 * m));
    let r44 = Complex64::new(1.0, 0.0) - r11 - r22 - r33;

    Ok(DensityMatrix::from_matrix(upper_to_hermitian(
        [r11, r22, r33, r44],
        [r12, r13, r14, r23, r24, r34],
    )))
}

/// One row of the comparison between printed and derived solutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrataEntry {
    /// Zero-based `(row, col)`.
    pub element: (usize, usize),
    pub printed: Complex64,
    pub derived: Complex64,
}

impl ErrataEntry {
    pub fn abs_diff(&self) -> f64 {
        (self.printed - self.derived).norm()
    }
}

/// Upper-triangle comparison of printed and derived solutions at `Theta`.
pub fn errata_table(rho0: &DensityMatrix, theta: f64, m1: u32) -> Result<Vec<ErrataEntry>> {
    let printed = printed_vacuum_solution(rho0, theta, m1)?;
    let derived = evolve_analytic_vacuum(rho0, theta, m1)?;
    let mut out = Vec::with_capacity(10);
    for i in 0..4 {
        for j in i..4 {
            out.push(ErrataEntry {
                element: (i, j),
                printed: printed.get(i, j),
                derived: derived.get(i, j),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve_ode, uniform_grid, DampingModel, EvolutionParams};
    use crate::states::{build_epr, FockWindow};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn epr() -> DensityMatrix {
        build_epr(c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)).unwrap()
    }

    fn rk4_at(rho0: &DensityMatrix, m1: u32, theta: f64) -> DensityMatrix {
        let times = uniform_grid(theta, 2).unwrap();
        let params = EvolutionParams::new(FockWindow::new(m1, m1), 0.0).with_substeps(2000);
        let traj = evolve_ode(
            rho0,
            &params,
            &DampingModel::Markovian { gamma_m: 1.0 },
            &times,
        )
        .unwrap();
        traj.states[1]
    }

    #[test]
    fn printed_rho22_fails_and_derived_passes_rk4() {
        for m1 in [0, 1] {
            let rho0 = epr();
            let x = 0.8;
            let ode = rk4_at(&rho0, m1, x);
            let printed = printed_vacuum_solution(&rho0, x, m1).unwrap();
            let derived = evolve_analytic_vacuum(&rho0, x, m1).unwrap();
            assert!((derived.population(1) - ode.population(1)).abs() < 1e-10);
            assert!((printed.population(1) - ode.population(1)).abs() > 1e-2);
        }
    }

    #[test]
    fn printed_rho22_collapses_to_single_exponential() {
        // With equal exponents the rho_44 feed cancels exactly.
        let rho0 = epr();
        let x = 1.1;
        let printed = printed_vacuum_solution(&rho0, x, 0).unwrap();
        assert!(printed.population(1).abs() < 1e-16);
    }

    #[test]
    fn printed_rho11_at_unit_window_zero() {
        let rho0 = epr();
        for x in [0.3, 1.0, 2.5] {
            let printed = printed_vacuum_solution(&rho0, x, 0).unwrap();
            assert!((printed.population(0) - (1.0 - 0.5 * (-x).exp())).abs() < 1e-15);
        }
    }

    #[test]
    fn agreeing_entries() {
        let mut rho0 = DensityMatrix::maximally_mixed();
        rho0.set(0, 1, Complex64::new(0.05, 0.02));
        rho0.set(1, 0, Complex64::new(0.05, -0.02));
        rho0.set(2, 3, Complex64::new(0.03, 0.0));
        rho0.set(3, 2, Complex64::new(0.03, 0.0));
        for m1 in 0..3 {
            let table = errata_table(&rho0, 0.6, m1).unwrap();
            for e in &table {
                let same = matches!(
                    e.element,
                    (0, 1) | (0, 2) | (0, 3) | (1, 2) | (1, 3) | (2, 3)
                );
                if same {
                    assert!(e.abs_diff() < 1e-15, "{:?}", e);
                }
            }
            let diag_bad = table
                .iter()
                .filter(|e| e.element.0 == e.element.1 && e.abs_diff() > 1e-6)
                .count();
            assert!(diag_bad >= 2);
        }
    }

    #[test]
    fn both_forms_agree_at_origin() {
        let rho0 = epr();
        let printed = printed_vacuum_solution(&rho0, 0.0, 0).unwrap();
        assert!(printed.max_abs_diff(&rho0) < 1e-15);
    }

    #[test]
    fn printed_rho33_misses_initial_value_for_higher_windows() {
        // m rho_44(0) survives at Theta = 0.
        let rho0 = epr();
        let printed = printed_vacuum_solution(&rho0, 0.0, 1).unwrap();
        assert!((printed.population(2) - 0.5).abs() < 1e-15);
        assert_eq!(rho0.population(2), 0.0);
    }
}
