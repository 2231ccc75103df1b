//! Damping-rate models: instantaneous rate `theta(t)` and its integral
//! `Theta(t)`.

use crate::error::{domain, Error, Result};

/// Largest allowed `r * omega0 * t` before `e^{r omega0 t}` is treated as
/// overflow.
pub const MAX_EXPONENT: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DampingModel {
    /// Constant rate `gamma_m`.
    Markovian { gamma_m: f64 },
    /// Accumulated decoherence `Gamma(omega0 t, r)` with `r = omega_c/omega0`.
    NonMarkovianOhmic { omega0: f64, r: f64 },
    /// Rate from the Lorentz-Drude Ohmic kernel, `2 omega_c (1 - e^{-omega_c t})`.
    KernelIntegral { omega_c: f64 },
}

impl DampingModel {
    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        match *self {
            Self::Markovian { gamma_m } if gamma_m.is_finite() && gamma_m >= 0.0 => Ok(()),
            Self::Markovian { gamma_m } => {
                Err(domain(format!("gamma_m must be >= 0, got {gamma_m}")))
            }
            Self::NonMarkovianOhmic { omega0, r } if ok(omega0) && ok(r) => Ok(()),
            Self::NonMarkovianOhmic { omega0, r } => Err(domain(format!(
                "omega0 and r must be > 0, got omega0 = {omega0}, r = {r}"
            ))),
            Self::KernelIntegral { omega_c } if ok(omega_c) => Ok(()),
            Self::KernelIntegral { omega_c } => {
                Err(domain(format!("omega_c must be > 0, got {omega_c}")))
            }
        }
    }

    /// Instantaneous rate `theta(t)`.
    pub fn rate(&self, t: f64) -> Result<f64> {
        instantaneous_rate(self, t)
    }

    /// Accumulated decoherence `Theta(t)`.
    pub fn theta(&self, t: f64) -> Result<f64> {
        accumulated_theta(self, t)
    }

    pub fn describe(&self) -> String {
        match *self {
            Self::Markovian { gamma_m } => format!("markovian(gamma_m={gamma_m})"),
            Self::NonMarkovianOhmic { omega0, r } => format!("ohmic(omega0={omega0},r={r})"),
            Self::KernelIntegral { omega_c } => format!("kernel(omega_c={omega_c})"),
        }
    }
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("time must be finite and >= 0, got {t}")))
    }
}

fn check_exponent(time: f64, tau: f64, r: f64) -> Result<()> {
    let exponent = r * tau;
    if exponent > MAX_EXPONENT {
        Err(Error::Overflow { time, exponent })
    } else {
        Ok(())
    }
}

/// `Gamma(tau) = 8r^2/(1+r^2) [tau + (r-1)/(1+r^2) e^{r tau} sin tau
///  + 2r/(1+r^2) (e^{r tau} cos tau - 1)]` with `tau = omega0 t`.
pub fn gamma_nonmarkov(tau: f64, r: f64) -> Result<f64> {
    check_time(tau)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(domain(format!("r must be > 0, got {r}")));
    }
    check_exponent(tau, tau, r)?;
    Ok(gamma_unchecked(tau, r))
}

/// `dGamma/dtau`.
pub fn gamma_nonmarkov_derivative(tau: f64, r: f64) -> Result<f64> {
    check_time(tau)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(domain(format!("r must be > 0, got {r}")));
    }
    check_exponent(tau, tau, r)?;
    Ok(gamma_derivative_unchecked(tau, r))
}

fn gamma_unchecked(tau: f64, r: f64) -> f64 {
    let q = 1.0 + r * r;
    let e = (r * tau).exp();
    8.0 * r * r / q * (tau + (r - 1.0) / q * e * tau.sin() + 2.0 * r / q * (e * tau.cos() - 1.0))
}

fn gamma_derivative_unchecked(tau: f64, r: f64) -> f64 {
    let q = 1.0 + r * r;
    let e = (r * tau).exp();
    let (s, c) = tau.sin_cos();
    8.0 * r * r / q * (1.0 + (r - 1.0) / q * e * (r * s + c) + 2.0 * r / q * e * (r * c - s))
}

/// Kernel rate `2 omega_c (1 - e^{-omega_c t})`.
pub fn gamma_kernel(t: f64, omega_c: f64) -> f64 {
    -2.0 * omega_c * (-omega_c * t).exp_m1()
}

/// Integral of [`gamma_kernel`] from 0 to `t`: `2 omega_c t - 2 (1 - e^{-omega_c t})`.
pub fn kernel_accumulated(t: f64, omega_c: f64) -> f64 {
    let x = omega_c * t;
    2.0 * (x + (-x).exp_m1())
}

pub fn instantaneous_rate(model: &DampingModel, t: f64) -> Result<f64> {
    check_time(t)?;
    match *model {
        DampingModel::Markovian { gamma_m } => Ok(gamma_m),
        DampingModel::NonMarkovianOhmic { omega0, r } => {
            let tau = omega0 * t;
            check_exponent(t, tau, r)?;
            Ok(omega0 * gamma_derivative_unchecked(tau, r))
        }
        DampingModel::KernelIntegral { omega_c } => Ok(gamma_kernel(t, omega_c)),
    }
}

pub fn accumulated_theta(model: &DampingModel, t: f64) -> Result<f64> {
    check_time(t)?;
    match *model {
        DampingModel::Markovian { gamma_m } => Ok(gamma_m * t),
        DampingModel::NonMarkovianOhmic { omega0, r } => {
            let tau = omega0 * t;
            check_exponent(t, tau, r)?;
            Ok(gamma_unchecked(tau, r))
        }
        DampingModel::KernelIntegral { omega_c } => Ok(kernel_accumulated(t, omega_c)),
    }
}
