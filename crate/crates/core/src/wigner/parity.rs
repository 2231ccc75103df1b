//! Matrix elements `K_{mm'}(alpha) = <m| D(alpha) P D(alpha)^dagger |m'>` of
//! the displaced parity operator.

use num_complex::Complex64;

use super::laguerre::laguerre_assoc;
use crate::error::{Error, Result};

/// Where the `K` elements come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ElementSource {
    /// Truncated-Fock-space exponentiation of the displacement generator.
    #[default]
    Oracle,
    /// `(-1)^m sqrt(m!/m'!) (2 alpha*)^{m'-m} e^{-2|alpha|^2} L_m^{m'-m}(4|alpha|^2)`.
    Closed,
    /// `e^{-|alpha|^2} (-1)^m (2|alpha|)^{m'-m} sqrt(m/m'!) L_m^{m'-m}(|alpha|)`.
    Paper,
}

impl ElementSource {
    pub fn element(self, m: u32, mp: u32, alpha: Complex64) -> Result<Complex64> {
        match self {
            Self::Oracle => {
                displaced_parity_oracle(m, mp, alpha, auto_cutoff(m.max(mp), alpha.norm()))
            }
            Self::Closed => Ok(displaced_parity_closed(m, mp, alpha)),
            Self::Paper => Ok(displaced_parity_paper(m, mp, alpha)),
        }
    }
}

fn ln_factorial(k: u32) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// Closed form from `D P D^dagger = D(2 alpha) P`; elements with `m > m'`
/// follow from Hermiticity.
pub fn displaced_parity_closed(m: u32, mp: u32, alpha: Complex64) -> Complex64 {
    if m > mp {
        return displaced_parity_closed(mp, m, alpha).conj();
    }
    let d = mp - m;
    let r2 = alpha.norm_sqr();
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let scale = (0.5 * (ln_factorial(m) - ln_factorial(mp)) - 2.0 * r2).exp();
    let power = (alpha.conj() * 2.0).powu(d);
    power * (sign * scale * laguerre_assoc(m, d, 4.0 * r2))
}

/// The element in the form
/// `e^{-|alpha|^2} (-1)^m (2|alpha|)^{m'-m} sqrt(m/m'!) L_m^{m'-m}(|alpha|)`,
/// evaluated as written for `m <= m'` and by conjugate symmetry otherwise.
pub fn displaced_parity_paper(m: u32, mp: u32, alpha: Complex64) -> Complex64 {
    if m > mp {
        return displaced_parity_paper(mp, m, alpha).conj();
    }
    let d = mp - m;
    let r = alpha.norm();
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let root = (m as f64 / ln_factorial(mp).exp()).sqrt();
    let value = (-r * r).exp() * sign * (2.0 * r).powi(d as i32) * root * laguerre_assoc(m, d, r);
    Complex64::new(value, 0.0)
}

/// Fock cutoff that holds `D(-alpha)|m>` to well below double precision.
pub fn auto_cutoff(m_max: u32, radius: f64) -> usize {
    let spread = radius * radius + 8.0 * radius * (2.0 * m_max as f64 + 1.0).sqrt();
    m_max as usize + 20 + spread.ceil() as usize
}

/// `exp(-G) e_m` with `G = alpha a^dagger - alpha* a` on the first `dim` Fock
/// states, i.e. `D(-alpha)|m>` truncated.
pub fn displaced_fock_vector(m: usize, alpha: Complex64, dim: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    if m < dim {
        v[m] = Complex64::new(1.0, 0.0);
    }
    let sqrt_n: Vec<f64> = (0..dim).map(|n| (n as f64).sqrt()).collect();
    // apply -G: (-G v)[n] = -alpha sqrt(n) v[n-1] + alpha* sqrt(n+1) v[n+1]
    let apply = |x: &[Complex64], out: &mut [Complex64], h: f64| {
        for n in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            if n > 0 {
                acc -= alpha * sqrt_n[n] * x[n - 1];
            }
            if n + 1 < dim {
                acc += alpha.conj() * sqrt_n[n + 1] * x[n + 1];
            }
            out[n] = acc * h;
        }
    };
    let norm_g = 2.0 * alpha.norm() * (dim as f64).sqrt();
    let steps = (norm_g / 4.0).ceil().max(1.0) as usize;
    let h = 1.0 / steps as f64;
    let mut term = vec![Complex64::new(0.0, 0.0); dim];
    let mut next = vec![Complex64::new(0.0, 0.0); dim];
    for _ in 0..steps {
        term.copy_from_slice(&v);
        for k in 1..200 {
            apply(&term, &mut next, h / k as f64);
            std::mem::swap(&mut term, &mut next);
            let mut size = 0.0f64;
            for (vi, ti) in v.iter_mut().zip(term.iter()) {
                *vi += *ti;
                size = size.max(ti.norm());
            }
            if size < 1e-18 {
                break;
            }
        }
    }
    v
}

fn overlap_with_parity(u: &[Complex64], w: &[Complex64]) -> Complex64 {
    u.iter()
        .zip(w.iter())
        .enumerate()
        .map(|(n, (a, b))| {
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            a.conj() * b * s
        })
        .sum()
}

fn oracle_at(m: u32, mp: u32, alpha: Complex64, dim: usize) -> Complex64 {
    let u = displaced_fock_vector(m as usize, alpha, dim);
    let w = displaced_fock_vector(mp as usize, alpha, dim);
    overlap_with_parity(&u, &w)
}

/// `K_{mm'}` by exponentiating the truncated displacement generator at
/// Fock cutoff `cutoff`; fails unless raising the cutoff by 10 changes the
/// value by less than `1e-10`.
pub fn displaced_parity_oracle(
    m: u32,
    mp: u32,
    alpha: Complex64,
    cutoff: usize,
) -> Result<Complex64> {
    let needed = m.max(mp) as usize + 20;
    if cutoff < needed {
        return Err(Error::Convergence(format!(
            "cutoff {cutoff} below the minimum {needed}"
        )));
    }
    let a = oracle_at(m, mp, alpha, cutoff);
    let b = oracle_at(m, mp, alpha, cutoff + 10);
    let delta = (a - b).norm();
    if delta >= 1e-10 {
        return Err(Error::Convergence(format!(
            "K_({m},{mp}) at alpha = {alpha} changes by {delta:e} between cutoffs {cutoff} and {}",
            cutoff + 10
        )));
    }
    Ok(b)
}

/// Oracle value at the automatic cutoff without the convergence re-check;
/// used for bulk tables.
pub(crate) fn oracle_unchecked(m: u32, mp: u32, alpha: Complex64) -> Complex64 {
    oracle_at(m, mp, alpha, auto_cutoff(m.max(mp), alpha.norm()))
}
