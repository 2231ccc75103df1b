//! Closed-form propagator for a vacuum bath on a symmetric window
//! `n1 = m1 = m`, as a function of the accumulated decoherence `Theta`.

use nalgebra::Matrix4;
use num_complex::Complex64;

use super::ode::{ClosureMode, CoefficientSet, EvolutionParams};
use crate::error::{domain, Result};
use crate::states::DensityMatrix;

/// Propagate `rho0` by `Theta` for `nbar = 0`, `n1 = m1 = m1`, leaky closure
/// and the corrected coefficient set.
pub fn evolve_analytic_vacuum(rho0: &DensityMatrix, theta: f64, m1: u32) -> Result<DensityMatrix> {
    if !(theta >= 0.0 && theta.is_finite()) {
        return Err(domain(format!(
            "Theta must be finite and >= 0, got {theta}"
        )));
    }
    let r = rho0.matrix();
    let p = |i: usize, j: usize| r[(i - 1, j - 1)];
    let m = m1 as f64;
    let k = m + 1.0;
    let e = |rate: f64| (-rate * theta).exp();
    let e0 = e(2.0 * m);
    let e1 = e(2.0 * m + 1.0);
    let e2 = e(2.0 * m + 2.0);
    let h1 = e(2.0 * m + 0.5);
    let h3 = e(2.0 * m + 1.5);

    let r44 = p(4, 4) * e2;
    let r22 = (p(2, 2) + k * p(4, 4)) * e1 - k * p(4, 4) * e2;
    let r33 = (p(3, 3) + k * p(4, 4)) * e1 - k * p(4, 4) * e2;
    let s0 = p(2, 2) + p(3, 3);
    let r11 = (p(1, 1) + k * s0 + k * k * p(4, 4)) * e0 - k * (s0 + 2.0 * k * p(4, 4)) * e1
        + k * k * p(4, 4) * e2;
    let r12 = (p(1, 2) + k * p(3, 4)) * h1 - k * p(3, 4) * h3;
    let r13 = (p(1, 3) + k * p(2, 4)) * h1 - k * p(2, 4) * h3;
    let r14 = p(1, 4) * e2;
    let r23 = p(2, 3) * e1;
    let r24 = p(2, 4) * h3;
    let r34 = p(3, 4) * h3;

    Ok(DensityMatrix::from_matrix(upper_to_hermitian(
        [r11, r22, r33, r44],
        [r12, r13, r14, r23, r24, r34],
    )))
}

/// Checked entry point: refuses parameter sets the closed form does not
/// describe.
pub fn evolve_analytic(
    rho0: &DensityMatrix,
    theta: f64,
    params: &EvolutionParams,
) -> Result<DensityMatrix> {
    if params.nbar != 0.0 {
        return Err(domain("closed-form propagator requires nbar = 0"));
    }
    if params.window.n1 != params.window.m1 {
        return Err(domain(format!(
            "closed-form propagator requires n1 = m1, got n1 = {}, m1 = {}",
            params.window.n1, params.window.m1
        )));
    }
    if params.coefficients != CoefficientSet::Corrected {
        return Err(domain(
            "closed-form propagator requires the corrected coefficient set",
        ));
    }
    if params.closure == ClosureMode::PaperClosure && params.window.m1 != 0 {
        return Err(domain(
            "closed-form propagator requires leaky closure when m1 > 0",
        ));
    }
    evolve_analytic_vacuum(rho0, theta, params.window.m1)
}

/// Build a Hermitian matrix from its real diagonal and upper triangle
/// `(12, 13, 14, 23, 24, 34)`.
pub(crate) fn upper_to_hermitian(
    diag: [Complex64; 4],
    upper: [Complex64; 6],
) -> Matrix4<Complex64> {
    let mut out = Matrix4::zeros();
    for (i, d) in diag.iter().enumerate() {
        out[(i, i)] = Complex64::new(d.re, 0.0);
    }
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    for (&(i, j), &z) in pairs.iter().zip(upper.iter()) {
        out[(i, j)] = z;
        out[(j, i)] = z.conj();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve_ode, uniform_grid, DampingModel};
    use crate::states::{build_epr, FockWindow};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn zero_theta_is_identity() {
        let rho = DensityMatrix::maximally_mixed();
        for m in 0..3 {
            assert_eq!(evolve_analytic_vacuum(&rho, 0.0, m).unwrap(), rho);
        }
    }

    #[test]
    fn epr_vacuum_window_hand_solution() {
        let rho0 = build_epr(c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)).unwrap();
        for x in [0.1, LN_2, 1.7, 4.0] {
            let s = evolve_analytic_vacuum(&rho0, x, 0).unwrap();
            let (e1, e2) = ((-x).exp(), (-2.0 * x).exp());
            assert!((s.population(1) - 0.5 * (e1 - e2)).abs() < 1e-15);
            assert!((s.population(2) - 0.5 * (e1 - e2)).abs() < 1e-15);
            assert!((s.population(0) - (1.0 - e1 + 0.5 * e2)).abs() < 1e-15);
            assert!((s.get(0, 3).re - 0.5 * e2).abs() < 1e-15);
            assert!((s.trace() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn coherence_14_rate() {
        let mut rho = DensityMatrix::maximally_mixed();
        rho.set(0, 3, Complex64::new(0.1, 0.05));
        rho.set(3, 0, Complex64::new(0.1, -0.05));
        for m in 0..4 {
            let x = 0.37;
            let s = evolve_analytic_vacuum(&rho, x, m).unwrap();
            let expect = rho.get(0, 3) * (-2.0 * (1.0 + m as f64) * x).exp();
            assert!((s.get(0, 3) - expect).norm() < 1e-15);
        }
    }

    #[test]
    fn checked_entry_rejects_unsupported_parameters() {
        let rho = DensityMatrix::maximally_mixed();
        assert!(
            evolve_analytic(&rho, 1.0, &EvolutionParams::new(FockWindow::new(1, 2), 0.0)).is_err()
        );
        assert!(
            evolve_analytic(&rho, 1.0, &EvolutionParams::new(FockWindow::new(1, 1), 0.5)).is_err()
        );
        let printed = EvolutionParams::default().with_coefficients(CoefficientSet::Printed);
        assert!(evolve_analytic(&rho, 1.0, &printed).is_err());
        let closed = EvolutionParams::new(FockWindow::new(1, 1), 0.0)
            .with_closure(ClosureMode::PaperClosure);
        assert!(evolve_analytic(&rho, 1.0, &closed).is_err());
        let closed0 = EvolutionParams::default().with_closure(ClosureMode::PaperClosure);
        assert!(evolve_analytic(&rho, 1.0, &closed0).is_ok());
        assert!(evolve_analytic_vacuum(&rho, -1.0, 0).is_err());
    }

    fn random_state(v: &[f64]) -> DensityMatrix {
        let mut a = Matrix4::<Complex64>::zeros();
        for k in 0..16 {
            a[(k / 4, k % 4)] = Complex64::new(v[2 * k], v[2 * k + 1]);
        }
        let rho = a * a.adjoint();
        let tr = rho.trace();
        DensityMatrix::from_matrix(rho / tr)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn agrees_with_rk4(v in proptest::collection::vec(-1.0f64..1.0, 32), m1 in 0u32..3) {
            let rho0 = random_state(&v);
            let params = EvolutionParams::new(FockWindow::new(m1, m1), 0.0);
            let model = DampingModel::Markovian { gamma_m: 0.8 };
            let times = uniform_grid(2.0, 9).unwrap();
            let traj = evolve_ode(&rho0, &params, &model, &times).unwrap();
            for (t, s) in traj.times.iter().zip(&traj.states) {
                let a = evolve_analytic_vacuum(&rho0, model.theta(*t).unwrap(), m1).unwrap();
                prop_assert!(a.max_abs_diff(s) < 1e-9);
            }
        }
    }
}
