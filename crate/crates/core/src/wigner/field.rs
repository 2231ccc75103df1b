//! Joint two-mode Wigner function on the window and its negativity volume.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;

use super::parity::{oracle_unchecked, ElementSource};
use crate::csvfmt;
use crate::error::{domain, Error, Result};
use crate::states::{DensityMatrix, FockWindow};

/// Points per axis used when none is given.
pub const DEFAULT_POINTS: usize = 32;
/// Default quadrature tolerance for the negativity volume.
pub const DEFAULT_TOLERANCE: f64 = 1e-3;
/// Largest imaginary part of `W`, relative to the entrywise 1-norm of the
/// state (at least one), accepted as round-off.
pub const IMAG_TOL: f64 = 1e-10;

const NORM: f64 = 4.0 / (PI * PI);

/// Square grid on `[-L, L]^4` over `(Re alpha, Im alpha, Re beta, Im beta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpaceGrid {
    pub extent: f64,
    pub points: usize,
}

impl PhaseSpaceGrid {
    pub fn new(extent: f64, points: usize) -> Result<Self> {
        if !(extent > 0.0 && extent.is_finite()) {
            return Err(domain(format!("extent must be > 0, got {extent}")));
        }
        if points < 8 || !points.is_multiple_of(2) {
            return Err(domain(format!(
                "points per axis must be even and >= 8, got {points}"
            )));
        }
        Ok(Self { extent, points })
    }

    /// `L = 5 + sqrt(n1 + m1 + 1)` with [`DEFAULT_POINTS`].
    pub fn default_for(window: FockWindow) -> Self {
        Self {
            extent: default_extent(window),
            points: DEFAULT_POINTS,
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        axis_nodes(self.extent, self.points)
    }
}

pub fn default_extent(window: FockWindow) -> f64 {
    5.0 + ((window.n1 + window.m1 + 1) as f64).sqrt()
}

fn axis_nodes(extent: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n)
        .map(|k| -extent + 2.0 * extent * k as f64 / last)
        .collect()
}

/// Trapezoidal weights on the uniform axis.
fn axis_weights(extent: f64, n: usize) -> Vec<f64> {
    let h = 2.0 * extent / (n - 1) as f64;
    (0..n)
        .map(|k| if k == 0 || k == n - 1 { 0.5 * h } else { h })
        .collect()
}

/// `K_{base+i, base+j}` for `i, j` in `{0, 1}`.
type Block = [[Complex64; 2]; 2];

fn block_at(source: ElementSource, base: u32, alpha: Complex64) -> Result<Block> {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2u32 {
        for j in 0..2u32 {
            out[i as usize][j as usize] = source.element(base + i, base + j, alpha)?;
        }
    }
    Ok(out)
}

/// Blocks over the planar grid `nodes x nodes`, indexed `ix * n + iy`.
///
/// Oracle elements are computed once per distinct radius and rotated:
/// `K_{mm'}(r e^{i phi}) = e^{i(m - m') phi} K_{mm'}(r)`.
fn mode_table(source: ElementSource, base: u32, nodes: &[f64]) -> Result<Vec<Block>> {
    let n = nodes.len();
    let points: Vec<Complex64> = (0..n * n)
        .map(|k| Complex64::new(nodes[k / n], nodes[k % n]))
        .collect();
    match source {
        ElementSource::Oracle => {
            let mut radii: Vec<u64> = points.iter().map(|a| a.norm_sqr().to_bits()).collect();
            radii.sort_unstable();
            radii.dedup();
            let radial: Vec<(u64, Block)> = radii
                .par_iter()
                .map(|&bits| {
                    let r = f64::from_bits(bits).sqrt();
                    let a = Complex64::new(r, 0.0);
                    let mut b = [[Complex64::new(0.0, 0.0); 2]; 2];
                    for i in 0..2u32 {
                        for j in 0..2u32 {
                            b[i as usize][j as usize] = oracle_unchecked(base + i, base + j, a);
                        }
                    }
                    (bits, b)
                })
                .collect();
            let lookup: HashMap<u64, Block> = radial.into_iter().collect();
            Ok(points
                .iter()
                .map(|a| {
                    let radial = lookup[&a.norm_sqr().to_bits()];
                    let phi = a.arg();
                    let mut b = radial;
                    for (i, row) in b.iter_mut().enumerate() {
                        for (j, v) in row.iter_mut().enumerate() {
                            *v *= Complex64::from_polar(1.0, (i as f64 - j as f64) * phi);
                        }
                    }
                    b
                })
                .collect())
        }
        _ => points
            .par_iter()
            .map(|&a| block_at(source, base, a))
            .collect(),
    }
}

/// `sum_{r,c} rho_rc K^A_{a(c) a(r)}` as a 2x2 matrix over `(b(r), b(c))`.
#[allow(clippy::needless_range_loop)]
fn contract_a(rho: &DensityMatrix, ka: &Block) -> Block {
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for ar in 0..2 {
        for br in 0..2 {
            for ac in 0..2 {
                for bc in 0..2 {
                    m[br][bc] += rho.get(2 * ar + br, 2 * ac + bc) * ka[ac][ar];
                }
            }
        }
    }
    m
}

fn contract_b(m: &Block, kb: &Block) -> Complex64 {
    let mut w = Complex64::new(0.0, 0.0);
    for br in 0..2 {
        for bc in 0..2 {
            w += m[br][bc] * kb[bc][br];
        }
    }
    w * NORM
}

/// Entrywise 1-norm of `rho`, at least one.
fn scale_of(rho: &DensityMatrix) -> f64 {
    rho.matrix().iter().map(|z| z.norm()).sum::<f64>().max(1.0)
}

fn real_part(w: Complex64, scale: f64) -> Result<f64> {
    if w.im.abs() > IMAG_TOL * scale {
        return Err(Error::Consistency(format!(
            "Wigner value has imaginary part {:e}",
            w.im
        )));
    }
    Ok(w.re)
}

/// `W(alpha, beta) = (4/pi^2) sum_{r,c} rho_rc K^A_{nA(c) nA(r)}(alpha) K^B_{nB(c) nB(r)}(beta)`
/// with absolute Fock indices of the window.
pub fn wigner_joint(
    rho: &DensityMatrix,
    alpha: Complex64,
    beta: Complex64,
    window: FockWindow,
    source: ElementSource,
) -> Result<f64> {
    let ka = block_at(source, window.n1, alpha)?;
    let kb = block_at(source, window.m1, beta)?;
    real_part(contract_b(&contract_a(rho, &ka), &kb), scale_of(rho))
}

/// Values of `W` on the full four-dimensional grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerField {
    pub grid: PhaseSpaceGrid,
    /// Row-major over `(Re alpha, Im alpha, Re beta, Im beta)`.
    pub values: Vec<f64>,
}

impl WignerField {
    pub fn compute(
        rho: &DensityMatrix,
        window: FockWindow,
        grid: PhaseSpaceGrid,
        source: ElementSource,
    ) -> Result<Self> {
        let nodes = grid.nodes();
        let (ta, tb) = tables(source, window, &nodes)?;
        let n2 = nodes.len() * nodes.len();
        let scale = scale_of(rho);
        let rows: Vec<Result<Vec<f64>>> = ta
            .par_iter()
            .map(|ka| {
                let m = contract_a(rho, ka);
                tb.iter()
                    .map(|kb| real_part(contract_b(&m, kb), scale))
                    .collect()
            })
            .collect();
        let mut values = Vec::with_capacity(n2 * n2);
        for r in rows {
            values.extend(r?);
        }
        Ok(Self { grid, values })
    }

    /// Trapezoidal `int W dOmega`.
    pub fn integral(&self) -> f64 {
        let n = self.grid.points;
        let w = axis_weights(self.grid.extent, n);
        let mut total = 0.0;
        for (k, v) in self.values.iter().enumerate() {
            total += v * w[k / (n * n * n)] * w[(k / (n * n)) % n] * w[(k / n) % n] * w[k % n];
        }
        total
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let n = self.grid.points;
        let x = self.grid.nodes();
        writeln!(out, "re_alpha,im_alpha,re_beta,im_beta,W")?;
        for (k, v) in self.values.iter().enumerate() {
            let idx = [k / (n * n * n), (k / (n * n)) % n, (k / n) % n, k % n];
            writeln!(
                out,
                "{}",
                csvfmt::num_row(&[x[idx[0]], x[idx[1]], x[idx[2]], x[idx[3]], *v])
            )?;
        }
        Ok(())
    }
}

fn tables(
    source: ElementSource,
    window: FockWindow,
    nodes: &[f64],
) -> Result<(Vec<Block>, Vec<Block>)> {
    let ta = mode_table(source, window.n1, nodes)?;
    let tb = if window.m1 == window.n1 {
        ta.clone()
    } else {
        mode_table(source, window.m1, nodes)?
    };
    Ok((ta, tb))
}

/// `W(x, 0, y, 0)` on the real axes, rows `(Re alpha, Re beta, W)`.
pub fn wigner_slice(
    rho: &DensityMatrix,
    window: FockWindow,
    grid: PhaseSpaceGrid,
    source: ElementSource,
) -> Result<Vec<[f64; 3]>> {
    let nodes = grid.nodes();
    let blocks = |base: u32| -> Result<Vec<Block>> {
        nodes
            .par_iter()
            .map(|&x| block_at(source, base, Complex64::new(x, 0.0)))
            .collect()
    };
    let scale = scale_of(rho);
    let ta = blocks(window.n1)?;
    let tb = blocks(window.m1)?;
    let mut out = Vec::with_capacity(nodes.len() * nodes.len());
    for (i, ka) in ta.iter().enumerate() {
        let m = contract_a(rho, ka);
        for (j, kb) in tb.iter().enumerate() {
            out.push([nodes[i], nodes[j], real_part(contract_b(&m, kb), scale)?]);
        }
    }
    Ok(out)
}

pub fn write_slice_csv<W: Write>(rows: &[[f64; 3]], mut out: W) -> io::Result<()> {
    writeln!(out, "re_alpha,re_beta,W")?;
    for r in rows {
        writeln!(out, "{}", csvfmt::num_row(r))?;
    }
    Ok(())
}

/// Element tables and weights for one axis resolution.
#[derive(Debug, Clone)]
struct AxisTables {
    ta: Vec<Block>,
    tb: Vec<Block>,
    /// Planar trapezoidal weights, indexed like the tables.
    weights: Vec<f64>,
}

impl AxisTables {
    fn new(window: FockWindow, extent: f64, n: usize, source: ElementSource) -> Result<Self> {
        let nodes = axis_nodes(extent, n);
        let w = axis_weights(extent, n);
        let (ta, tb) = tables(source, window, &nodes)?;
        let weights = (0..n * n).map(|k| w[k / n] * w[k % n]).collect();
        Ok(Self { ta, tb, weights })
    }

    /// Trapezoidal `(int W, int |W|)`.
    fn integrate(&self, rho: &DensityMatrix) -> Result<(f64, f64)> {
        let scale = scale_of(rho);
        let partial: Vec<Result<(f64, f64)>> = self
            .ta
            .par_iter()
            .zip(self.weights.par_iter())
            .map(|(ka, wa)| {
                let m = contract_a(rho, ka);
                let (mut s, mut s_abs) = (0.0, 0.0);
                for (kb, wb) in self.tb.iter().zip(self.weights.iter()) {
                    let v = real_part(contract_b(&m, kb), scale)?;
                    s += v * wb;
                    s_abs += v.abs() * wb;
                }
                Ok((s * wa, s_abs * wa))
            })
            .collect();
        // fixed summation order
        let mut total = (0.0, 0.0);
        for p in partial {
            let (s, a) = p?;
            total.0 += s;
            total.1 += a;
        }
        Ok(total)
    }
}

/// Negativity-volume quadrature with element tables built once for a
/// window, grid and element source, reusable across states.
#[derive(Debug, Clone)]
pub struct VolumeIntegrator {
    window: FockWindow,
    grid: PhaseSpaceGrid,
    full: AxisTables,
    half: AxisTables,
}

impl VolumeIntegrator {
    pub fn new(window: FockWindow, grid: PhaseSpaceGrid, source: ElementSource) -> Result<Self> {
        Ok(Self {
            window,
            grid,
            full: AxisTables::new(window, grid.extent, grid.points, source)?,
            half: AxisTables::new(window, grid.extent, grid.points / 2, source)?,
        })
    }

    pub fn window(&self) -> FockWindow {
        self.window
    }

    pub fn grid(&self) -> PhaseSpaceGrid {
        self.grid
    }

    /// Trapezoidal `int W dOmega` at full resolution.
    pub fn integral(&self, rho: &DensityMatrix) -> Result<f64> {
        Ok(self.full.integrate(rho)?.0)
    }

    /// Both resolutions without failing on disagreement.
    pub fn report(&self, rho: &DensityMatrix, tolerance: f64) -> Result<VolumeReport> {
        let (s, a) = self.full.integrate(rho)?;
        let (sh, ah) = self.half.integrate(rho)?;
        let volume = (0.5 * (a - s)).max(0.0);
        let volume_half = (0.5 * (ah - sh)).max(0.0);
        Ok(VolumeReport {
            volume,
            volume_half,
            integral: s,
            tolerance,
            converged: (volume - volume_half).abs() <= 10.0 * tolerance,
        })
    }

    /// As [`report`](Self::report), failing with both values when the
    /// half-resolution estimate differs by more than `10 * tolerance`.
    pub fn negativity_volume(&self, rho: &DensityMatrix, tolerance: f64) -> Result<VolumeReport> {
        let r = self.report(rho, tolerance)?;
        if !r.converged {
            return Err(Error::Quadrature {
                value: r.volume,
                half: r.volume_half,
            });
        }
        Ok(r)
    }
}

/// Trapezoidal `int W dOmega` on the grid.
pub fn wigner_integral(
    rho: &DensityMatrix,
    window: FockWindow,
    grid: PhaseSpaceGrid,
    source: ElementSource,
) -> Result<f64> {
    AxisTables::new(window, grid.extent, grid.points, source)?
        .integrate(rho)
        .map(|(s, _)| s)
}

/// Negativity volume at full and half resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeReport {
    /// `(int |W| - int W) / 2` at full resolution.
    pub volume: f64,
    /// The same at half the points per axis.
    pub volume_half: f64,
    /// `int W` at full resolution.
    pub integral: f64,
    pub tolerance: f64,
    pub converged: bool,
}

/// Both resolutions without failing on disagreement.
pub fn volume_report(
    rho: &DensityMatrix,
    window: FockWindow,
    grid: PhaseSpaceGrid,
    source: ElementSource,
    tolerance: f64,
) -> Result<VolumeReport> {
    VolumeIntegrator::new(window, grid, source)?.report(rho, tolerance)
}

/// Negativity volume `(int |W| - int W) / 2`, which is the integral of the
/// negative part of `W`; fails with both values when the half-resolution
/// estimate differs by more than `10 * tolerance`.
pub fn negativity_volume(
    rho: &DensityMatrix,
    window: FockWindow,
    grid: PhaseSpaceGrid,
    source: ElementSource,
    tolerance: f64,
) -> Result<VolumeReport> {
    VolumeIntegrator::new(window, grid, source)?.negativity_volume(rho, tolerance)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fock(k: usize) -> DensityMatrix {
        let mut p = [0.0; 4];
        p[k] = 1.0;
        DensityMatrix::diagonal(p)
    }

    const ORIGIN: Complex64 = Complex64::new(0.0, 0.0);

    #[test]
    fn origin_values() {
        let w = FockWindow::default();
        for source in [ElementSource::Oracle, ElementSource::Closed] {
            assert!(
                (wigner_joint(&fock(0), ORIGIN, ORIGIN, w, source).unwrap() - NORM).abs() < 1e-10
            );
            assert!(
                (wigner_joint(&fock(1), ORIGIN, ORIGIN, w, source).unwrap() + NORM).abs() < 1e-10
            );
            assert!(
                (wigner_joint(&fock(3), ORIGIN, ORIGIN, w, source).unwrap() - NORM).abs() < 1e-10
            );
        }
        // absolute Fock indices: |2,3> has parity -1
        let w = FockWindow::new(2, 3);
        assert!(
            (wigner_joint(&fock(0), ORIGIN, ORIGIN, w, ElementSource::Closed).unwrap() + NORM)
                .abs()
                < 1e-12
        );
    }

    #[test]
    fn vacuum_gaussian_off_origin() {
        let a = Complex64::new(0.3, -0.2);
        let b = Complex64::new(-0.5, 0.1);
        let w = wigner_joint(&fock(0), a, b, FockWindow::default(), ElementSource::Oracle).unwrap();
        let expect = NORM * (-2.0 * (a.norm_sqr() + b.norm_sqr())).exp();
        assert!((w - expect).abs() < 1e-12);
    }

    #[test]
    fn vacuum_normalization_at_48_points() {
        let grid = PhaseSpaceGrid::new(5.0, 48).unwrap();
        let s =
            wigner_integral(&fock(0), FockWindow::default(), grid, ElementSource::Oracle).unwrap();
        assert!((s - 1.0).abs() < 1e-3);
    }

    #[test]
    fn table_matches_pointwise_oracle() {
        let nodes = axis_nodes(3.0, 8);
        let t = mode_table(ElementSource::Oracle, 1, &nodes).unwrap();
        for (k, b) in t.iter().enumerate() {
            let a = Complex64::new(nodes[k / 8], nodes[k % 8]);
            let direct = block_at(ElementSource::Closed, 1, a).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert!((b[i][j] - direct[i][j]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn field_matches_pointwise_evaluation() {
        let grid = PhaseSpaceGrid::new(2.0, 8).unwrap();
        let mut rho = DensityMatrix::maximally_mixed();
        rho.set(0, 3, Complex64::new(0.1, 0.05));
        rho.set(3, 0, Complex64::new(0.1, -0.05));
        let window = FockWindow::new(0, 1);
        let f = WignerField::compute(&rho, window, grid, ElementSource::Closed).unwrap();
        let x = grid.nodes();
        let k = 8 * 8 * 8 * 3 + 8 * 8 * 5 + 8 + 6;
        let direct = wigner_joint(
            &rho,
            Complex64::new(x[3], x[5]),
            Complex64::new(x[1], x[6]),
            window,
            ElementSource::Closed,
        )
        .unwrap();
        assert!((f.values[k] - direct).abs() < 1e-14);
        let s = f.integral();
        assert!(s.is_finite());
    }

    #[test]
    fn grid_validation() {
        assert!(PhaseSpaceGrid::new(5.0, 7).is_err());
        assert!(PhaseSpaceGrid::new(5.0, 9).is_err());
        assert!(PhaseSpaceGrid::new(0.0, 8).is_err());
        let g = PhaseSpaceGrid::default_for(FockWindow::new(1, 2));
        assert_eq!(g.extent, 7.0);
    }

    #[test]
    fn paper_source_is_real() {
        let rho = DensityMatrix::maximally_mixed();
        let v = wigner_joint(
            &rho,
            Complex64::new(0.4, 0.3),
            ORIGIN,
            FockWindow::default(),
            ElementSource::Paper,
        );
        assert!(v.is_ok());
    }
}
