use std::io::{self, Write};

use super::discord::{discord_bruteforce_full, discord_x, DiscordVariant, DEFAULT_GRID};
use super::entropy::shannon_entropy;
use super::measures::{concurrence, log_negativity, negativity};
use super::xstate::{matches_pattern, XPattern, PATTERN_TOL};
use crate::csvfmt;
use crate::error::Result;
use crate::states::DensityMatrix;

/// How the discord column is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiscordMethod {
    /// Closed form for X-shaped states, numerical search otherwise.
    #[default]
    Auto,
    /// Closed form only; non-X states give NaN.
    Closed(DiscordVariant),
    /// Numerical search on a grid of the given resolution.
    BruteForce(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CorrelationOptions {
    pub discord: DiscordMethod,
}

/// All correlation measures of one state. Measures that cannot be evaluated
/// (for example entropies of a non-positive matrix) are NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub negativity: f64,
    pub log_negativity: f64,
    pub concurrence: f64,
    pub discord: f64,
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub purity: f64,
    pub trace: f64,
}

fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let p = |i| rho.population(i);
    // the marginal off-diagonals enter through full entropies below
    let h = rho.hermitian_part();
    let a = [h[(0, 0)].re + h[(1, 1)].re, h[(2, 2)].re + h[(3, 3)].re];
    let a_off = (h[(0, 2)] + h[(1, 3)]).norm();
    let b = [p(0) + p(2), p(1) + p(3)];
    let b_off = (h[(0, 1)] + h[(2, 3)]).norm();
    let s2 = |d: [f64; 2], off: f64| {
        let r = ((d[0] - d[1]).powi(2) + 4.0 * off * off).sqrt();
        shannon_entropy(&[0.5 * (d[0] + d[1] + r), 0.5 * (d[0] + d[1] - r)])
    };
    Ok(s2(a, a_off)? + s2(b, b_off)? - shannon_entropy(&rho.eigenvalues())?)
}

impl CorrelationReport {
    pub fn compute(rho: &DensityMatrix, options: &CorrelationOptions) -> Self {
        let n = negativity(rho);
        let (discord, mi, cc) = discord_columns(rho, options.discord);
        Self {
            negativity: n,
            log_negativity: log_negativity(rho),
            concurrence: concurrence(rho),
            discord,
            mutual_information: mi,
            classical_correlation: cc,
            purity: rho.purity(),
            trace: rho.trace(),
        }
    }

    pub fn csv_header() -> &'static str {
        "t,N,LN,C,QD,I,CC,purity,trace"
    }

    pub fn csv_row(&self, t: f64) -> String {
        csvfmt::num_row(&[
            t,
            self.negativity,
            self.log_negativity,
            self.concurrence,
            self.discord,
            self.mutual_information,
            self.classical_correlation,
            self.purity,
            self.trace,
        ])
    }

    /// Header plus one row per `(t, report)` pair.
    pub fn write_csv<W: Write>(rows: &[(f64, CorrelationReport)], mut w: W) -> io::Result<()> {
        writeln!(w, "{}", Self::csv_header())?;
        for (t, r) in rows {
            writeln!(w, "{}", r.csv_row(*t))?;
        }
        Ok(())
    }
}

fn discord_columns(rho: &DensityMatrix, method: DiscordMethod) -> (f64, f64, f64) {
    let closed = |variant| -> Result<(f64, f64, f64)> {
        let qd = discord_x(rho, variant)?;
        let mi = mutual_information(rho)?;
        Ok((qd, mi, mi - qd))
    };
    let brute = |grid| -> Result<(f64, f64, f64)> {
        let r = discord_bruteforce_full(rho, grid)?;
        Ok((r.discord, r.mutual_information, r.classical_correlation))
    };
    let out = match method {
        DiscordMethod::Closed(v) => closed(v),
        DiscordMethod::BruteForce(g) => brute(g),
        DiscordMethod::Auto if matches_pattern(rho, XPattern::X, PATTERN_TOL) => {
            closed(DiscordVariant::default())
        }
        DiscordMethod::Auto => brute(DEFAULT_GRID),
    };
    out.unwrap_or((f64::NAN, f64::NAN, f64::NAN))
}
