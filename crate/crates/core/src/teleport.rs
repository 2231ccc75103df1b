//! Two-qubit teleportation through a window state used as the channel.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use crate::correlations::{
    check_pattern, shannon_h, CorrelationOptions, CorrelationReport, XPattern, PATTERN_TOL,
};
use crate::error::{domain, Error, Result};
use crate::states::DensityMatrix;

/// Fidelity reachable with classical communication alone.
pub const CLASSICAL_BOUND: f64 = 2.0 / 3.0;
/// Minimum eigenvalue below which the input is flagged non-physical.
pub const PHYSICAL_TOL: f64 = 1e-12;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `(1-2p)/2 |00><00| + (1+2p)/2 |11><11| + q/2 (|11><00| + |00><11|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InputState {
    pub p: f64,
    pub q: f64,
    pub matrix: DensityMatrix,
    /// Set when the minimum eigenvalue is below `-PHYSICAL_TOL`.
    pub non_physical: bool,
}

pub fn input_state(p: f64, q: f64) -> Result<InputState> {
    if !(0.0..=1.0).contains(&p) {
        return Err(domain(format!("p must lie in [0, 1], got {p}")));
    }
    if !(q > 0.0 && q.is_finite()) {
        return Err(domain(format!("q must be > 0, got {q}")));
    }
    let mut m = Matrix4::zeros();
    m[(0, 0)] = c(0.5 - p);
    m[(3, 3)] = c(0.5 + p);
    m[(0, 3)] = c(0.5 * q);
    m[(3, 0)] = c(0.5 * q);
    let matrix = DensityMatrix::from_matrix(m);
    let non_physical = matrix.min_eigenvalue() < -PHYSICAL_TOL;
    Ok(InputState {
        p,
        q,
        matrix,
        non_physical,
    })
}

/// Pauli operators indexed `0, x, y, z`.
pub fn pauli(k: usize) -> Matrix2<Complex64> {
    let (o, i, z) = (c(1.0), Complex64::new(0.0, 1.0), c(0.0));
    match k {
        0 => Matrix2::new(o, z, z, o),
        1 => Matrix2::new(z, o, o, z),
        2 => Matrix2::new(z, -i, i, z),
        3 => Matrix2::new(o, z, z, -o),
        _ => panic!("Pauli index {k} out of range"),
    }
}

/// Bell projectors `E^0 = psi-`, `E^x = phi-`, `E^y = phi+`, `E^z = psi+`
/// with `psi(+/-) = (|01> +/- |10>)/sqrt2` and `phi(+/-) = (|00> +/- |11>)/sqrt2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BellProjectors {
    pub e: [Matrix4<Complex64>; 4],
}

impl BellProjectors {
    pub fn new() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ket = |v: [f64; 4]| DensityMatrix::pure(v.map(|x| c(x * h))).into_matrix();
        Self {
            e: [
                ket([0.0, 1.0, -1.0, 0.0]),
                ket([1.0, 0.0, 0.0, -1.0]),
                ket([1.0, 0.0, 0.0, 1.0]),
                ket([0.0, 1.0, 1.0, 0.0]),
            ],
        }
    }

    /// `Tr[E^alpha rho]` for `alpha = 0, x, y, z`.
    pub fn probabilities(&self, rho: &DensityMatrix) -> [f64; 4] {
        self.e.each_ref().map(|e| (e * rho.matrix()).trace().re)
    }
}

impl Default for BellProjectors {
    fn default() -> Self {
        Self::new()
    }
}

/// Placement of the Pauli pair on the right of the input state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IndexOrder {
    /// `(s_a x s_b) rho (s_b x s_a)`, which is not trace preserving.
    Printed,
    /// `(s_a x s_b) rho (s_a x s_b)`.
    #[default]
    Symmetric,
}

impl fmt::Display for IndexOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Printed => "printed",
            Self::Symmetric => "symmetric",
        })
    }
}

impl FromStr for IndexOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(Self::Printed),
            "symmetric" => Ok(Self::Symmetric),
            _ => Err(domain(format!("unknown index order {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TeleportResult {
    pub rho_out: DensityMatrix,
    /// `Tr[rho_un rho_out]`.
    pub fidelity: f64,
    /// `P_{ab} = Tr[E^a rho] Tr[E^b rho]`.
    pub weights: [[f64; 4]; 4],
    pub index_order: IndexOrder,
    /// Trace of the window state before renormalization.
    pub channel_trace: f64,
}

impl TeleportResult {
    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().flatten().sum()
    }

    pub fn exceeds_classical_bound(&self) -> bool {
        self.fidelity > CLASSICAL_BOUND
    }
}

/// The channel conditioned on the window, `rho / Tr rho`.
pub fn window_resource(channel: &DensityMatrix) -> Result<DensityMatrix> {
    let t = channel.trace();
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain(format!(
            "channel trace must be positive and finite, got {t}"
        )));
    }
    Ok(DensityMatrix::from_matrix(channel.matrix().map(|z| z / t)))
}

/// `sum_{ab} P_ab (s_a x s_b) rho_un R_ab` for an arbitrary input matrix, with
/// the channel renormalized by [`window_resource`].
pub fn teleport_matrix(
    channel: &DensityMatrix,
    rho_un: &Matrix4<Complex64>,
    order: IndexOrder,
) -> Result<TeleportResult> {
    let resource = window_resource(channel)?;
    let probs = BellProjectors::new().probabilities(&resource);
    let mut weights = [[0.0; 4]; 4];
    let mut out = Matrix4::zeros();
    for a in 0..4 {
        for b in 0..4 {
            let w = probs[a] * probs[b];
            weights[a][b] = w;
            let left: Matrix4<Complex64> = pauli(a).kronecker(&pauli(b));
            let right: Matrix4<Complex64> = match order {
                IndexOrder::Printed => pauli(b).kronecker(&pauli(a)),
                IndexOrder::Symmetric => left,
            };
            out += left * rho_un * right * c(w);
        }
    }
    let fidelity = (rho_un * out).trace().re;
    Ok(TeleportResult {
        rho_out: DensityMatrix::from_matrix(out),
        fidelity,
        weights,
        index_order: order,
        channel_trace: channel.trace(),
    })
}

pub fn teleport_general(
    channel: &DensityMatrix,
    input: &InputState,
    order: IndexOrder,
) -> Result<TeleportResult> {
    teleport_matrix(channel, input.matrix.matrix(), order)
}

/// Which coherence of the channel carries the entanglement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelFamily {
    Epr,
    Noon,
}

/// Output coefficients for an X-shaped channel:
/// `k1 = (1+2p)/2 u^2 + (1-2p)/2 v^2`, `k1_flip` the same with `p -> -p`,
/// `k2 = 2q (Re rho_14)^2` or `2q (Re rho_23)^2`, `k3 = u v`,
/// with `u = rho_11 + rho_44` and `v = rho_22 + rho_33`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub family: ChannelFamily,
    pub p: f64,
    pub q: f64,
    pub k1: f64,
    pub k1_flip: f64,
    pub k2: f64,
    pub k3: f64,
}

impl ClosedForm {
    fn from_channel(
        channel: &DensityMatrix,
        p: f64,
        q: f64,
        family: ChannelFamily,
    ) -> Result<Self> {
        let pattern = match family {
            ChannelFamily::Epr => XPattern::Epr,
            ChannelFamily::Noon => XPattern::Noon,
        };
        let channel = &window_resource(channel)?;
        check_pattern(channel, pattern, PATTERN_TOL)?;
        let pop = |i| channel.population(i);
        let u = pop(0) + pop(3);
        let v = pop(1) + pop(2);
        let coherence = match family {
            ChannelFamily::Epr => channel.get(0, 3).re,
            ChannelFamily::Noon => channel.get(1, 2).re,
        };
        Ok(Self {
            family,
            p,
            q,
            k1: (0.5 + p) * u * u + (0.5 - p) * v * v,
            k1_flip: (0.5 - p) * u * u + (0.5 + p) * v * v,
            k2: 2.0 * q * coherence * coherence,
            k3: u * v,
        })
    }

    /// `k1 + q k2`.
    pub fn fidelity_printed(&self) -> f64 {
        self.k1 + self.q * self.k2
    }

    /// `Tr[rho_un rho_out]` of the derived output matrix.
    pub fn fidelity(&self) -> f64 {
        (0.5 - self.p) * self.k1 + (0.5 + self.p) * self.k1_flip + self.q * self.k2
    }

    /// Derived output matrix for the given index order.
    pub fn output_matrix(&self, order: IndexOrder) -> DensityMatrix {
        let mut m = Matrix4::zeros();
        m[(0, 0)] = c(self.k1);
        m[(3, 3)] = c(self.k1_flip);
        m[(0, 3)] = c(self.k2);
        m[(3, 0)] = c(self.k2);
        match order {
            IndexOrder::Printed => {
                m[(1, 2)] = c(self.k3);
                m[(2, 1)] = c(self.k3);
            }
            IndexOrder::Symmetric => {
                m[(1, 1)] = c(self.k3);
                m[(2, 2)] = c(self.k3);
            }
        }
        DensityMatrix::from_matrix(m)
    }

    /// The printed layout, with `k1` in both outer diagonal corners.
    pub fn printed_matrix(&self) -> DensityMatrix {
        let mut m = self.output_matrix(IndexOrder::Printed);
        m.set(3, 3, c(self.k1));
        m
    }

    /// `max(0, 2(k3 - k1), 2 k2)`.
    pub fn concurrence_printed(&self) -> f64 {
        0.0f64.max(2.0 * (self.k3 - self.k1)).max(2.0 * self.k2)
    }

    /// `max(0, log2(1 + 2(k2 + k3 - k1)))`; NaN when the argument is not positive.
    pub fn log_negativity_printed(&self) -> f64 {
        let arg = 1.0 + 2.0 * (self.k2 + self.k3 - self.k1);
        if arg > 0.0 {
            arg.log2().max(0.0)
        } else {
            f64::NAN
        }
    }

    /// `min(Q, Q')` with `Q = H(k1) + sum l log2 l + H((1 + sqrt((1-2k1)^2 + 4(k2+k3)^2))/2)`
    /// and `Q' = sum l log2 l + 2 k1` over the eigenvalues `k1 +/- k2`, `+/- k3` of the
    /// printed matrix. Non-positive eigenvalues contribute nothing; NaN when a binary
    /// entropy argument leaves `[0, 1]`.
    pub fn discord_printed(&self) -> f64 {
        let xlogx = |l: f64| if l > 0.0 { l * l.log2() } else { 0.0 };
        let lam: f64 = [self.k1 + self.k2, self.k1 - self.k2, self.k3, -self.k3]
            .into_iter()
            .map(xlogx)
            .sum();
        let s = 0.5
            * (1.0 + ((1.0 - 2.0 * self.k1).powi(2) + 4.0 * (self.k2 + self.k3).powi(2)).sqrt());
        let q = match (shannon_h(self.k1), shannon_h(s)) {
            (Ok(a), Ok(b)) => a + lam + b,
            _ => f64::NAN,
        };
        q.min(lam + 2.0 * self.k1)
    }
}

pub fn closed_form_epr(channel: &DensityMatrix, p: f64, q: f64) -> Result<ClosedForm> {
    ClosedForm::from_channel(channel, p, q, ChannelFamily::Epr)
}

/// With `rho_44 = 0`, `k1 = (1-2p)/2 v^2 + (1+2p)/2 rho_11^2` and `k3 = rho_11 v`.
pub fn closed_form_noon(channel: &DensityMatrix, p: f64, q: f64) -> Result<ClosedForm> {
    ClosedForm::from_channel(channel, p, q, ChannelFamily::Noon)
}

/// Correlation measures of the output state, evaluated formally.
pub fn teleported_measures(
    result: &TeleportResult,
    options: &CorrelationOptions,
) -> CorrelationReport {
    CorrelationReport::compute(&result.rho_out, options)
}
