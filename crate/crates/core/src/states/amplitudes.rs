use num_complex::Complex64;

use super::FockWindow;
use crate::error::{domain, Error, Result};

/// Amplitudes `(a, b, c, d)` on the window basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitudes {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Amplitudes {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_real(v: [f64; 4]) -> Self {
        let c = |x: f64| Complex64::new(x, 0.0);
        Self::new(c(v[0]), c(v[1]), c(v[2]), c(v[3]))
    }

    pub fn as_array(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.as_array().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::DegenerateState);
        }
        let [a, b, c, d] = self.as_array().map(|z| z / n);
        Ok(Self::new(a, b, c, d))
    }

    /// `|<self|other>|`, which is 1 when the two agree up to a global phase.
    pub fn overlap_modulus(&self, other: &Amplitudes) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array().iter())
            .map(|(x, y)| x.conj() * y)
            .sum::<Complex64>()
            .norm()
    }
}

/// Raw and renormalized amplitudes of a coherent product state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentAmplitudes {
    pub raw: Amplitudes,
    pub normalized: Amplitudes,
}

pub(crate) fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `k * ln(x)` with `0 * ln(0) = 0`.
fn ln_power(x: f64, k: u64) -> f64 {
    if k == 0 {
        0.0
    } else if x == 0.0 {
        f64::NEG_INFINITY
    } else {
        k as f64 * x.ln()
    }
}

/// Build amplitudes from natural logarithms of their moduli, normalizing
/// relative to the largest one so that tiny raw values survive.
fn from_logs(logs: [f64; 4]) -> Result<CoherentAmplitudes> {
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Err(Error::DegenerateState);
    }
    let raw = Amplitudes::from_real(logs.map(f64::exp));
    let scaled = Amplitudes::from_real(logs.map(|l| (l - max).exp()));
    Ok(CoherentAmplitudes {
        raw,
        normalized: scaled.normalized()?,
    })
}

fn check_nbar(nbar_prime: f64) -> Result<()> {
    if nbar_prime >= 0.0 && nbar_prime.is_finite() {
        Ok(())
    } else {
        Err(domain(format!(
            "mean photon number must be finite and >= 0, got {nbar_prime}"
        )))
    }
}

/// Closed-form window amplitudes of the coherent product in the form
///
/// `a = e^{-n}/sqrt2 * sqrt(n^{n1+m1} / (n1 m1)!)`,
/// `b = e^{-n}/sqrt2 * sqrt(n^{n1+m1+1} / [n1 (m1+1)]!)`,
/// `c = e^{-n}/sqrt2 * sqrt(n^{m1 (n1+1)} / [m1 (n1+1)]!)`,
/// `d = e^{-n}/sqrt2 * sqrt(n^{(m1+1)(n1+1)} / [(m1+1)(n1+1)]!)`,
///
/// with `0^0 = 1`. The raw values are not normalized in general.
pub fn coherent_amplitudes_paper(
    nbar_prime: f64,
    window: FockWindow,
) -> Result<CoherentAmplitudes> {
    check_nbar(nbar_prime)?;
    let n1 = window.n1 as u64;
    let m1 = window.m1 as u64;
    let prefactor = -nbar_prime - 0.5 * std::f64::consts::LN_2;
    let term = |power: u64, fact: u64| {
        prefactor + 0.5 * (ln_power(nbar_prime, power) - ln_factorial(fact))
    };
    from_logs([
        term(n1 + m1, n1 * m1),
        term(n1 + m1 + 1, n1 * (m1 + 1)),
        term(m1 * (n1 + 1), m1 * (n1 + 1)),
        term((m1 + 1) * (n1 + 1), (m1 + 1) * (n1 + 1)),
    ])
}

/// Projection of `|alpha> (x) |beta>` with equal mean photon numbers onto the
/// window, using `c_n = e^{-n'/2} sqrt(n'^n / n!)` per mode.
pub fn projection_amplitudes(nbar_prime: f64, window: FockWindow) -> Result<CoherentAmplitudes> {
    check_nbar(nbar_prime)?;
    let ln_c = |n: u64| -0.5 * nbar_prime + 0.5 * (ln_power(nbar_prime, n) - ln_factorial(n));
    let n1 = window.n1 as u64;
    let m1 = window.m1 as u64;
    from_logs([
        ln_c(n1) + ln_c(m1),
        ln_c(n1) + ln_c(m1 + 1),
        ln_c(n1 + 1) + ln_c(m1),
        ln_c(n1 + 1) + ln_c(m1 + 1),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn re(a: &Amplitudes) -> [f64; 4] {
        a.as_array().map(|z| z.re)
    }

    fn close(a: [f64; 4], b: [f64; 4], tol: f64) -> bool {
        a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn projection_unit_mean_photon_is_uniform() {
        let amps = projection_amplitudes(1.0, FockWindow::new(0, 0)).unwrap();
        assert!(close(re(&amps.normalized), [0.5; 4], 1e-15));
        let e = (-1.0f64).exp();
        assert!(close(re(&amps.raw), [e; 4], 1e-15));
    }

    #[test]
    fn projection_vacuum() {
        let amps = projection_amplitudes(0.0, FockWindow::new(0, 0)).unwrap();
        assert_eq!(re(&amps.normalized), [1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn closed_form_vacuum_window_keeps_zero_power_terms() {
        // a and c both carry n'^0 at n1 = m1 = 0.
        let amps = coherent_amplitudes_paper(0.0, FockWindow::new(0, 0)).unwrap();
        assert!(close(
            re(&amps.raw),
            [FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0],
            1e-15
        ));
        assert!(close(
            re(&amps.normalized),
            [FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0],
            1e-15
        ));
    }

    #[test]
    fn closed_form_agrees_with_projection_at_unit_mean() {
        let w = FockWindow::new(0, 0);
        let a = coherent_amplitudes_paper(1.0, w).unwrap();
        let b = projection_amplitudes(1.0, w).unwrap();
        assert!(close(re(&a.normalized), [0.5; 4], 1e-15));
        assert!((a.normalized.overlap_modulus(&b.normalized) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn closed_form_disagrees_with_projection_elsewhere() {
        let w = FockWindow::new(0, 0);
        let a = coherent_amplitudes_paper(2.0, w).unwrap();
        let b = projection_amplitudes(2.0, w).unwrap();
        assert!(a.normalized.overlap_modulus(&b.normalized) < 1.0 - 1e-3);
        let w = FockWindow::new(1, 2);
        let a = coherent_amplitudes_paper(1.0, w).unwrap();
        let b = projection_amplitudes(1.0, w).unwrap();
        assert!(a.normalized.overlap_modulus(&b.normalized) < 1.0 - 1e-3);
    }

    #[test]
    fn closed_form_raw_values_at_window_one_two() {
        // n' = 2, n1 = 1, m1 = 2: powers 3, 4, 4, 6 over 2!, 3!, 4!, 6!.
        let amps = coherent_amplitudes_paper(2.0, FockWindow::new(1, 2)).unwrap();
        let pre = (-2.0f64).exp() * FRAC_1_SQRT_2;
        let expect = [
            pre * (8.0f64 / 2.0).sqrt(),
            pre * (16.0f64 / 6.0).sqrt(),
            pre * (16.0f64 / 24.0).sqrt(),
            pre * (64.0f64 / 720.0).sqrt(),
        ];
        assert!(close(re(&amps.raw), expect, 1e-14));
    }

    #[test]
    fn large_window_survives_underflow() {
        let amps = projection_amplitudes(0.01, FockWindow::new(300, 300)).unwrap();
        assert!((amps.normalized.norm_sqr() - 1.0).abs() < 1e-12);
        assert_eq!(amps.raw.a.re, 0.0);
    }

    #[test]
    fn rejects_negative_mean() {
        assert!(projection_amplitudes(-1.0, FockWindow::default()).is_err());
        assert!(coherent_amplitudes_paper(f64::NAN, FockWindow::default()).is_err());
    }

    #[test]
    fn degenerate_amplitudes_error() {
        let z = Amplitudes::from_real([0.0; 4]);
        assert_eq!(z.normalized(), Err(Error::DegenerateState));
    }

    #[test]
    fn ln_factorial_small_values() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        assert!((ln_factorial(5) - 120.0f64.ln()).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn normalized_has_unit_norm(n in 0.0f64..50.0, n1 in 0u32..6, m1 in 0u32..6) {
            let w = FockWindow::new(n1, m1);
            for amps in [coherent_amplitudes_paper(n, w), projection_amplitudes(n, w)] {
                let amps = amps.unwrap();
                prop_assert!((amps.normalized.norm_sqr() - 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn projection_symmetric_window_has_b_equal_c(n in 0.0f64..50.0) {
            let amps = projection_amplitudes(n, FockWindow::new(0, 0)).unwrap();
            prop_assert!((amps.normalized.b - amps.normalized.c).norm() < 1e-15);
        }
    }
}
