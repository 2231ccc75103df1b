//! Quantum discord with projective measurements on `B`: the X-state closed
//! form and a direct numerical minimisation over measurement bases.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use rayon::prelude::*;

use super::entropy::{shannon_entropy, shannon_h, CLIP_TOL};
use super::xstate::{check_pattern, XPattern, PATTERN_TOL};
use crate::error::{domain, Result};
use crate::states::DensityMatrix;

/// Sign in front of `sum lambda log2 lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EntropySign {
    /// `+ sum lambda log2 lambda`, i.e. `- S(rho)`.
    #[default]
    Printed,
    /// `- sum lambda log2 lambda`.
    Flipped,
}

/// Form of the second measurement branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum D2Form {
    /// `-sum rho_jj - H(rho_11 + rho_33)`.
    Printed,
    /// `-sum rho_jj log2 rho_jj - H(rho_11 + rho_33)`.
    #[default]
    Entropic,
}

/// How `rho_33` and `rho_44` enter the argument of `D_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SArgument {
    /// `[1 - 2(rho_33 + rho_44)]^2`.
    #[default]
    Sum,
    /// `[1 - 2 rho_33 rho_44]^2`.
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DiscordVariant {
    pub sign: EntropySign,
    pub d2: D2Form,
    pub s_arg: SArgument,
}

impl DiscordVariant {
    /// Every combination of the three switches.
    pub fn all() -> Vec<DiscordVariant> {
        let mut out = Vec::with_capacity(8);
        for sign in [EntropySign::Printed, EntropySign::Flipped] {
            for d2 in [D2Form::Printed, D2Form::Entropic] {
                for s_arg in [SArgument::Sum, SArgument::Product] {
                    out.push(DiscordVariant { sign, d2, s_arg });
                }
            }
        }
        out
    }
}

/// The two measurement branches of the closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordBranches {
    pub q1: f64,
    pub q2: f64,
}

impl DiscordBranches {
    pub fn discord(&self) -> f64 {
        self.q1.min(self.q2)
    }
}

/// `Q_i = H(rho_11 + rho_33) + sum lambda log2 lambda + D_i`, with
/// `D_1 = H(s)`, `s = (1 + sqrt([1 - 2(rho_33 + rho_44)]^2 + 4(|rho_14| + |rho_23|)^2)) / 2`.
pub fn discord_x_branches(rho: &DensityMatrix, variant: DiscordVariant) -> Result<DiscordBranches> {
    check_pattern(rho, XPattern::X, PATTERN_TOL)?;
    let p = [0, 1, 2, 3].map(|i| rho.population(i));
    let h_b = shannon_h(p[0] + p[2])?;
    let s_ab = shannon_entropy(&rho.eigenvalues())?;
    let lam_log_lam = match variant.sign {
        EntropySign::Printed => -s_ab,
        EntropySign::Flipped => s_ab,
    };
    let arg = match variant.s_arg {
        SArgument::Sum => 1.0 - 2.0 * (p[2] + p[3]),
        SArgument::Product => 1.0 - 2.0 * p[2] * p[3],
    };
    let coh = rho.get(0, 3).norm() + rho.get(1, 2).norm();
    let s = 0.5 * (1.0 + (arg * arg + 4.0 * coh * coh).sqrt());
    let d1 = shannon_h(s)?;
    let d2 = match variant.d2 {
        D2Form::Printed => -p.iter().sum::<f64>() - h_b,
        D2Form::Entropic => shannon_entropy(&p)? - h_b,
    };
    Ok(DiscordBranches {
        q1: h_b + lam_log_lam + d1,
        q2: h_b + lam_log_lam + d2,
    })
}

/// `min(Q_1, Q_2)` for an X-shaped state.
pub fn discord_x(rho: &DensityMatrix, variant: DiscordVariant) -> Result<f64> {
    Ok(discord_x_branches(rho, variant)?.discord())
}

/// Grid resolution used when none is given.
pub const DEFAULT_GRID: usize = 64;

/// Outcome of the measurement minimisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordResult {
    pub discord: f64,
    pub mutual_information: f64,
    pub classical_correlation: f64,
    /// Optimal measurement direction `(theta_m, phi_m)`.
    pub basis: (f64, f64),
}

/// Discord by sweeping `|psi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`
/// on `B` over a `grid_resolution^2` grid, then polishing the best point
/// with a Nelder-Mead search.
pub fn discord_bruteforce(rho: &DensityMatrix, grid_resolution: usize) -> Result<f64> {
    Ok(discord_bruteforce_full(rho, grid_resolution)?.discord)
}

pub fn discord_bruteforce_full(
    rho: &DensityMatrix,
    grid_resolution: usize,
) -> Result<DiscordResult> {
    if grid_resolution < 4 {
        return Err(domain(format!(
            "grid resolution must be >= 4, got {grid_resolution}"
        )));
    }
    let h = rho.hermitian_part();
    let ev = rho.eigenvalues();
    if ev[0] < -CLIP_TOL || ev[3] > 1.0 + CLIP_TOL {
        return Err(domain(format!(
            "state has eigenvalues outside [0, 1]: {ev:?}"
        )));
    }
    let s_ab = shannon_entropy(&ev)?;
    let rho_a = Matrix2::new(
        h[(0, 0)] + h[(1, 1)],
        h[(0, 2)] + h[(1, 3)],
        h[(2, 0)] + h[(3, 1)],
        h[(2, 2)] + h[(3, 3)],
    );
    let rho_b = Matrix2::new(
        h[(0, 0)] + h[(2, 2)],
        h[(0, 1)] + h[(2, 3)],
        h[(1, 0)] + h[(3, 2)],
        h[(1, 1)] + h[(3, 3)],
    );
    let s_a = entropy2(&rho_a);
    let s_b = entropy2(&rho_b);

    let cond = |theta: f64, phi: f64| conditional_entropy(&h, theta, phi);
    let n = grid_resolution;
    let grid: Vec<(f64, f64, f64)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let theta = PI * i as f64 / (n - 1) as f64;
            (0..n).map(move |j| {
                let phi = 2.0 * PI * j as f64 / n as f64;
                (cond(theta, phi), theta, phi)
            })
        })
        .collect();
    // sequential reduction keeps the choice deterministic
    let (mut best, mut bt, mut bp) = grid[0];
    for &(v, t, p) in &grid[1..] {
        if v < best {
            (best, bt, bp) = (v, t, p);
        }
    }
    let (v, t, p) = nelder_mead(
        |x| cond(x[0], x[1]),
        [bt, bp],
        [PI / n as f64, 2.0 * PI / n as f64],
    );
    if v < best {
        (best, bt, bp) = (v, t, p);
    }
    let mutual_information = s_a + s_b - s_ab;
    let classical_correlation = s_a - best;
    Ok(DiscordResult {
        discord: mutual_information - classical_correlation,
        mutual_information,
        classical_correlation,
        basis: (bt, bp),
    })
}

/// Entropy of a 2x2 Hermitian matrix, eigenvalues clipped at zero.
fn entropy2(m: &Matrix2<Complex64>) -> f64 {
    let (l1, l2) = eig2(m);
    eta(l1) + eta(l2)
}

fn eta(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

fn eig2(m: &Matrix2<Complex64>) -> (f64, f64) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)].norm();
    let r = ((a - d).powi(2) + 4.0 * b * b).sqrt();
    (0.5 * (a + d + r), 0.5 * (a + d - r))
}

/// `sum_k p_k S(rho_A^k)` for the basis `(theta, phi)` on `B`.
fn conditional_entropy(h: &nalgebra::Matrix4<Complex64>, theta: f64, phi: f64) -> f64 {
    let (s, c) = (0.5 * theta).sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    let basis = [
        Vector2::new(Complex64::new(c, 0.0), e * s),
        Vector2::new(-e.conj() * s, Complex64::new(c, 0.0)),
    ];
    let mut total = 0.0;
    for psi in &basis {
        let mut m = Matrix2::<Complex64>::zeros();
        for a in 0..2 {
            for ap in 0..2 {
                let mut acc = Complex64::new(0.0, 0.0);
                for b in 0..2 {
                    for bp in 0..2 {
                        acc += psi[b].conj() * h[(2 * a + b, 2 * ap + bp)] * psi[bp];
                    }
                }
                m[(a, ap)] = acc;
            }
        }
        let (l1, l2) = eig2(&m);
        let pk = l1 + l2;
        if pk > 0.0 {
            // p_k S(M/p_k) = -sum l log2(l/p_k)
            total += eta(l1) + eta(l2) + pk * pk.log2();
        }
    }
    total
}

/// Two-dimensional Nelder-Mead minimisation; returns `(f, x0, x1)`.
fn nelder_mead<F: Fn([f64; 2]) -> f64>(f: F, start: [f64; 2], step: [f64; 2]) -> (f64, f64, f64) {
    let mut pts = [
        start,
        [start[0] + step[0], start[1]],
        [start[0], start[1] + step[1]],
    ];
    let mut vals = pts.map(&f);
    for _ in 0..1000 {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.map(|k| pts[k]);
        vals = order.map(|k| vals[k]);
        if (vals[2] - vals[0]).abs() < 1e-15 {
            break;
        }
        let centroid = [0.5 * (pts[0][0] + pts[1][0]), 0.5 * (pts[0][1] + pts[1][1])];
        let along = |t: f64| {
            [
                centroid[0] + t * (pts[2][0] - centroid[0]),
                centroid[1] + t * (pts[2][1] - centroid[1]),
            ]
        };
        let xr = along(-1.0);
        let fr = f(xr);
        if fr < vals[0] {
            let xe = along(-2.0);
            let fe = f(xe);
            if fe < fr {
                (pts[2], vals[2]) = (xe, fe);
            } else {
                (pts[2], vals[2]) = (xr, fr);
            }
        } else if fr < vals[1] {
            (pts[2], vals[2]) = (xr, fr);
        } else {
            let xc = if fr < vals[2] {
                along(-0.5)
            } else {
                along(0.5)
            };
            let fc = f(xc);
            if fc < vals[2].min(fr) {
                (pts[2], vals[2]) = (xc, fc);
            } else {
                for k in 1..3 {
                    pts[k] = [0.5 * (pts[0][0] + pts[k][0]), 0.5 * (pts[0][1] + pts[k][1])];
                    vals[k] = f(pts[k]);
                }
            }
        }
    }
    let k = (0..3)
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]))
        .unwrap_or(0);
    (vals[k], pts[k][0], pts[k][1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::build_epr;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bell() -> DensityMatrix {
        build_epr(
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            Complex64::new(FRAC_1_SQRT_2, 0.0),
        )
        .unwrap()
    }

    fn x_state(p: [f64; 4], z14: Complex64, z23: Complex64) -> DensityMatrix {
        let mut rho = DensityMatrix::diagonal(p);
        rho.set(0, 3, z14);
        rho.set(3, 0, z14.conj());
        rho.set(1, 2, z23);
        rho.set(2, 1, z23.conj());
        rho
    }

    #[test]
    fn bell_has_unit_discord() {
        assert!((discord_x(&bell(), DiscordVariant::default()).unwrap() - 1.0).abs() < 1e-12);
        assert!((discord_bruteforce(&bell(), DEFAULT_GRID).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn classical_states_have_zero_discord() {
        let rho = DensityMatrix::diagonal([0.1, 0.2, 0.3, 0.4]);
        assert!(discord_x(&rho, DiscordVariant::default()).unwrap().abs() < 1e-12);
        assert!(discord_bruteforce(&rho, DEFAULT_GRID).unwrap().abs() < 1e-8);
        let prod = DensityMatrix::diagonal([1.0, 0.0, 0.0, 0.0]);
        assert!(discord_bruteforce(&prod, DEFAULT_GRID).unwrap().abs() < 1e-8);
    }

    #[test]
    fn product_pure_state_in_rotated_basis() {
        // |+> (x) (cos|0> + i sin|1>) is a product, so discord vanishes.
        let (a, b) = (FRAC_1_SQRT_2, Complex64::new(0.0, 0.6));
        let amps = [
            Complex64::new(a * 0.8, 0.0),
            b * a,
            Complex64::new(a * 0.8, 0.0),
            b * a,
        ];
        let rho = DensityMatrix::pure(amps);
        assert!(discord_bruteforce(&rho, DEFAULT_GRID).unwrap().abs() < 1e-8);
    }

    #[test]
    fn werner_state_discord() {
        // p Bell + (1-p) I/4; discord has the known closed form
        // (1-p)/4 log2(1-p) - (1+p)/2 log2(1+p) + (1+3p)/4 log2(1+3p).
        for p in [0.2, 0.5, 0.9] {
            let q = (1.0 - p) / 4.0;
            let rho = x_state(
                [q + p / 2.0, q, q, q + p / 2.0],
                Complex64::new(p / 2.0, 0.0),
                Complex64::new(0.0, 0.0),
            );
            let expect = (1.0 - p) / 4.0 * (1.0 - p).log2() - (1.0 + p) / 2.0 * (1.0 + p).log2()
                + (1.0 + 3.0 * p) / 4.0 * (1.0 + 3.0 * p).log2();
            assert!((discord_x(&rho, DiscordVariant::default()).unwrap() - expect).abs() < 1e-12);
            assert!((discord_bruteforce(&rho, DEFAULT_GRID).unwrap() - expect).abs() < 1e-8);
        }
    }

    #[test]
    fn resolution_guard_and_non_physical_input() {
        assert!(discord_bruteforce(&bell(), 3).is_err());
        let bad = DensityMatrix::diagonal([1.2, -0.2, 0.0, 0.0]);
        assert!(discord_bruteforce(&bad, 8).is_err());
    }

    #[test]
    fn printed_switches_fail_the_oracle() {
        let rho = x_state(
            [0.4, 0.15, 0.15, 0.3],
            Complex64::new(0.2, 0.05),
            Complex64::new(0.05, 0.0),
        );
        let oracle = discord_bruteforce(&rho, DEFAULT_GRID).unwrap();
        let good = discord_x(&rho, DiscordVariant::default()).unwrap();
        assert!((good - oracle).abs() < 1e-6);
        for v in DiscordVariant::all() {
            if v != DiscordVariant::default() {
                // an out-of-range argument of H also counts as failing
                if let Ok(val) = discord_x(&rho, v) {
                    assert!(
                        (val - oracle).abs() > 1e-3,
                        "{v:?} gives {val}, oracle {oracle}"
                    );
                }
            }
        }
    }

    #[test]
    fn mutual_information_splits() {
        let rho = x_state(
            [0.4, 0.15, 0.15, 0.3],
            Complex64::new(0.2, 0.05),
            Complex64::new(0.05, 0.0),
        );
        let r = discord_bruteforce_full(&rho, 32).unwrap();
        assert!((r.discord - (r.mutual_information - r.classical_correlation)).abs() < 1e-14);
        assert!(r.classical_correlation >= 0.0 && r.discord >= 0.0);
    }

    #[test]
    fn refinement_converges() {
        let rho = x_state(
            [0.5, 0.1, 0.1, 0.3],
            Complex64::new(0.25, 0.0),
            Complex64::new(0.0, 0.0),
        );
        let a = discord_bruteforce(&rho, 32).unwrap();
        let b = discord_bruteforce(&rho, 64).unwrap();
        assert!((a - b).abs() < 1e-5);
    }
}
