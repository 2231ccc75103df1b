//! The sixteen coupled rate equations on the window and a fixed-step RK4
//! integrator.

use nalgebra::Matrix4;
use num_complex::Complex64;

use super::damping::DampingModel;
use super::trajectory::Trajectory;
use crate::error::{domain, Error, Result};
use crate::states::{DensityMatrix, FockWindow};

/// How the `rho_44` equation is closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClosureMode {
    /// Raw equations; trace may decay below one.
    #[default]
    Leaky,
    /// `d rho_44 = -(d rho_11 + d rho_22 + d rho_33)`, keeping the trace fixed.
    PaperClosure,
}

/// Coefficient variant of the rate equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoefficientSet {
    /// `rho_14` decays at `theta (n1+m1+2)` and the `rho_13` thermal term
    /// carries `nbar`, mirroring `rho_12`.
    #[default]
    Corrected,
    /// `rho_14` decays at `theta (n1+1)(n1+m1+1)` and the `rho_13` term
    /// `-(theta/2)(2n1+m1+3) rho_13` has no `nbar` factor.
    Printed,
}

pub const DEFAULT_SUBSTEPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionParams {
    pub window: FockWindow,
    pub nbar: f64,
    pub closure: ClosureMode,
    pub coefficients: CoefficientSet,
    /// RK4 steps per output interval.
    pub substeps: usize,
}

impl Default for EvolutionParams {
    fn default() -> Self {
        Self {
            window: FockWindow::default(),
            nbar: 0.0,
            closure: ClosureMode::Leaky,
            coefficients: CoefficientSet::Corrected,
            substeps: DEFAULT_SUBSTEPS,
        }
    }
}

impl EvolutionParams {
    pub fn new(window: FockWindow, nbar: f64) -> Self {
        Self {
            window,
            nbar,
            ..Self::default()
        }
    }

    pub fn with_closure(mut self, closure: ClosureMode) -> Self {
        self.closure = closure;
        self
    }

    pub fn with_coefficients(mut self, coefficients: CoefficientSet) -> Self {
        self.coefficients = coefficients;
        self
    }

    pub fn with_substeps(mut self, substeps: usize) -> Self {
        self.substeps = substeps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nbar >= 0.0 && self.nbar.is_finite()) {
            return Err(domain(format!(
                "nbar must be finite and >= 0, got {}",
                self.nbar
            )));
        }
        if self.substeps == 0 {
            return Err(domain("substeps must be >= 1"));
        }
        Ok(())
    }
}

/// Right-hand side at time `t` with `theta = model.rate(t)`.
pub fn ode_rhs(
    rho: &DensityMatrix,
    t: f64,
    params: &EvolutionParams,
    model: &DampingModel,
) -> Result<Matrix4<Complex64>> {
    let theta = model.rate(t)?;
    Ok(rhs_with_rate(rho.matrix(), theta, params))
}

/// Right-hand side for a given instantaneous rate.
pub fn rhs_with_rate(
    rho: &Matrix4<Complex64>,
    theta: f64,
    params: &EvolutionParams,
) -> Matrix4<Complex64> {
    let n = params.window.n1 as f64;
    let m = params.window.m1 as f64;
    let nb = params.nbar;
    let th = theta;
    let h = 0.5 * th;
    // one-based access
    let p = |i: usize, j: usize| rho[(i - 1, j - 1)];

    let (f13, r14) = match params.coefficients {
        CoefficientSet::Corrected => (nb, n + m + 2.0),
        CoefficientSet::Printed => (1.0, (n + 1.0) * (n + m + 1.0)),
    };

    let mut d = Matrix4::<Complex64>::zeros();
    let mut put = |i: usize, j: usize, v: Complex64| d[(i - 1, j - 1)] = v;

    let d11 = -th * (2.0 * nb * (n + m + 1.0) + (n + m)) * p(1, 1)
        + th * (nb + 1.0) * ((n + 1.0) * p(3, 3) + (m + 1.0) * p(2, 2));
    let d22 = -th * (nb + 1.0) * ((n + m + 1.0) * p(2, 2) - (n + 1.0) * p(4, 4))
        - th * nb * ((n + 1.0) * p(2, 2) - (m + 1.0) * p(1, 1));
    let d33 = -th * (nb + 1.0) * ((n + m + 1.0) * p(3, 3) - (m + 1.0) * p(4, 4))
        - th * nb * ((m + 1.0) * p(3, 3) - (n + 1.0) * p(1, 1));
    let d44 = match params.closure {
        ClosureMode::Leaky => {
            -th * (nb + 1.0) * (n + m + 2.0) * p(4, 4)
                + th * nb * ((n + 1.0) * p(2, 2) + (m + 1.0) * p(3, 3))
        }
        ClosureMode::PaperClosure => -(d11 + d22 + d33),
    };
    put(1, 1, d11);
    put(2, 2, d22);
    put(3, 3, d33);
    put(4, 4, d44);

    let c12 = |x: Complex64, y: Complex64| {
        -h * (nb + 1.0) * ((2.0 * n + 2.0 * m + 1.0) * x - 2.0 * (n + 1.0) * y)
            - h * nb * (2.0 * n + m + 3.0) * x
    };
    put(1, 2, c12(p(1, 2), p(3, 4)));
    put(2, 1, c12(p(2, 1), p(4, 3)));

    let c13 = |x: Complex64, y: Complex64| {
        -h * (nb + 1.0) * ((2.0 * n + 2.0 * m + 1.0) * x - 2.0 * (n + 1.0) * y)
            - h * f13 * (2.0 * n + m + 3.0) * x
    };
    put(1, 3, c13(p(1, 3), p(2, 4)));
    put(3, 1, c13(p(3, 1), p(4, 2)));

    let c14 = |x: Complex64| -th * r14 * x - h * nb * (n + m + 2.0) * x;
    put(1, 4, c14(p(1, 4)));
    put(4, 1, c14(p(4, 1)));

    let c23 = |x: Complex64| -th * (nb + 1.0) * (n + m + 1.0) * x - h * nb * (n + m + 2.0) * x;
    put(2, 3, c23(p(2, 3)));
    put(3, 2, c23(p(3, 2)));

    let c24 = |x: Complex64, y: Complex64| {
        -h * (nb + 1.0) * (2.0 * n + 2.0 * m + 3.0) * x
            - h * nb * ((n + 1.0) * x - 2.0 * (m + 1.0) * y)
    };
    put(2, 4, c24(p(2, 4), p(1, 3)));
    put(4, 2, c24(p(4, 2), p(3, 1)));

    let c34 = |x: Complex64, y: Complex64| {
        -h * (nb + 1.0) * (2.0 * n + 2.0 * m + 3.0) * x
            - h * nb * ((m + 1.0) * x - 2.0 * (n + 1.0) * y)
    };
    put(3, 4, c34(p(3, 4), p(1, 2)));
    put(4, 3, c34(p(4, 3), p(2, 1)));

    d
}

fn check_grid(times: &[f64]) -> Result<()> {
    match times.first() {
        None => return Err(domain("time grid is empty")),
        Some(&t0) if t0 != 0.0 => {
            return Err(domain(format!("time grid must start at 0, got {t0}")))
        }
        _ => {}
    }
    if times.iter().any(|t| !t.is_finite()) {
        return Err(domain("time grid contains non-finite values"));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(domain("time grid must be strictly increasing"));
    }
    Ok(())
}

/// `points` equally spaced times from 0 to `t_max`; a single point when
/// `t_max = 0`.
pub fn uniform_grid(t_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(t_max >= 0.0 && t_max.is_finite()) {
        return Err(domain(format!(
            "t_max must be finite and >= 0, got {t_max}"
        )));
    }
    if t_max == 0.0 {
        return Ok(vec![0.0]);
    }
    if points < 2 {
        return Err(domain(format!(
            "a positive duration needs at least 2 points, got {points}"
        )));
    }
    let last = (points - 1) as f64;
    Ok((0..points).map(|k| t_max * k as f64 / last).collect())
}

/// Fixed-step RK4 over `times`, with `params.substeps` steps per interval
/// and re-symmetrization after every step.
pub fn evolve_ode(
    rho0: &DensityMatrix,
    params: &EvolutionParams,
    model: &DampingModel,
    times: &[f64],
) -> Result<Trajectory> {
    params.validate()?;
    model.validate()?;
    check_grid(times)?;
    if !rho0.is_finite() {
        return Err(domain("initial state has non-finite entries"));
    }

    let mut states = Vec::with_capacity(times.len());
    states.push(*rho0);
    let mut y = *rho0.matrix();
    let half = Complex64::new(0.5, 0.0);
    for w in times.windows(2) {
        let (t_start, t_end) = (w[0], w[1]);
        let h = (t_end - t_start) / params.substeps as f64;
        for s in 0..params.substeps {
            let t = t_start + h * s as f64;
            let rate = |tt: f64| model.rate(tt).map_err(|e| integration_error(tt, e));
            let (r0, r_mid, r1) = (rate(t)?, rate(t + 0.5 * h)?, rate(t + h)?);
            let k1 = rhs_with_rate(&y, r0, params);
            let k2 = rhs_with_rate(&(y + k1 * cx(0.5 * h)), r_mid, params);
            let k3 = rhs_with_rate(&(y + k2 * cx(0.5 * h)), r_mid, params);
            let k4 = rhs_with_rate(&(y + k3 * cx(h)), r1, params);
            y += (k1 + k2 * cx(2.0) + k3 * cx(2.0) + k4) * cx(h / 6.0);
            y = (y + y.adjoint()) * half;
            if !y.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::Integration {
                    time: t + h,
                    reason: "state became non-finite".into(),
                });
            }
        }
        states.push(DensityMatrix::from_matrix(y));
    }
    Trajectory::new(times.to_vec(), states)
}

fn cx(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn integration_error(time: f64, e: Error) -> Error {
    match e {
        Error::Overflow { .. } => e,
        other => Error::Integration {
            time,
            reason: other.to_string(),
        },
    }
}
