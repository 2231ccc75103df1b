//! Versioned TOML scenario files.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use fockcorr::correlations::{CorrelationOptions, DiscordMethod, DiscordVariant, DEFAULT_GRID};
use fockcorr::dynamics::{
    uniform_grid, ClosureMode, CoefficientSet, DampingModel, EvolutionParams, DEFAULT_SUBSTEPS,
};
use fockcorr::states::{
    build_epr, build_from_amplitudes, build_noon, coherent_amplitudes_paper, projection_amplitudes,
};
use fockcorr::teleport::IndexOrder;
use fockcorr::wigner::{
    default_extent, ElementSource, PhaseSpaceGrid, DEFAULT_POINTS, DEFAULT_TOLERANCE,
};
use fockcorr::{DensityMatrix, FockWindow};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// A complex number written as a bare real or as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cx {
    Real(f64),
    Pair([f64; 2]),
}

impl Cx {
    pub fn value(self) -> Complex64 {
        match self {
            Self::Real(x) => Complex64::new(x, 0.0),
            Self::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmplitudeForm {
    #[default]
    Paper,
    Projection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateSpec {
    Epr {
        a: Cx,
        d: Cx,
    },
    Noon {
        b: Cx,
        c: Cx,
    },
    Coherent {
        nbar_prime: f64,
        #[serde(default)]
        amplitudes: AmplitudeForm,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    #[serde(default)]
    pub n1: u32,
    #[serde(default)]
    pub m1: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelSpec {
    Markovian { gamma_m: f64 },
    Ohmic { omega0: f64, r: f64 },
    Kernel { omega_c: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Closure {
    #[default]
    Leaky,
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    #[default]
    Corrected,
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSpec {
    pub t_max: f64,
    /// Number of intervals; the grid has `steps + 1` points.
    pub steps: usize,
    #[serde(default = "default_substeps")]
    pub substeps: usize,
}

fn default_substeps() -> usize {
    DEFAULT_SUBSTEPS
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiscordSpec {
    #[default]
    Auto,
    Closed,
    Bruteforce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrelationSpec {
    #[serde(default)]
    pub discord: DiscordSpec,
    #[serde(default = "default_discord_grid")]
    pub grid: usize,
}

impl Default for CorrelationSpec {
    fn default() -> Self {
        Self {
            discord: DiscordSpec::Auto,
            grid: DEFAULT_GRID,
        }
    }
}

fn default_discord_grid() -> usize {
    DEFAULT_GRID
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Printed,
    #[default]
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TeleportSpec {
    pub p: f64,
    pub q: f64,
    #[serde(default)]
    pub index_order: Order,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Elements {
    #[default]
    Oracle,
    Closed,
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WignerSpec {
    /// Half-width `L`; defaults to `5 + sqrt(n1 + m1 + 1)`.
    #[serde(default)]
    pub extent: Option<f64>,
    #[serde(default = "default_points")]
    pub points: usize,
    #[serde(default)]
    pub elements: Elements,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

impl Default for WignerSpec {
    fn default() -> Self {
        Self {
            extent: None,
            points: DEFAULT_POINTS,
            elements: Elements::Oracle,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

fn default_points() -> usize {
    DEFAULT_POINTS
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: u32,
    pub state: StateSpec,
    #[serde(default)]
    pub window: WindowSpec,
    #[serde(default)]
    pub nbar: f64,
    pub model: ModelSpec,
    #[serde(default)]
    pub closure: Closure,
    #[serde(default)]
    pub coefficients: Coefficients,
    pub time: TimeSpec,
    #[serde(default)]
    pub correlations: CorrelationSpec,
    #[serde(default)]
    pub teleport: Option<TeleportSpec>,
    #[serde(default)]
    pub wigner: Option<WignerSpec>,
}

/// Parse and validate a scenario file.
pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    let scenario: Scenario = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    scenario.validate()?;
    Ok(scenario)
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl Scenario {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema != SCHEMA_VERSION {
            return Err(config(format!(
                "unsupported schema {}, expected {SCHEMA_VERSION}",
                self.schema
            )));
        }
        let t = &self.time;
        if !(t.t_max >= 0.0 && t.t_max.is_finite()) {
            return Err(config(format!(
                "t_max must be finite and >= 0, got {}",
                t.t_max
            )));
        }
        if t.t_max > 0.0 && t.steps < 2 {
            return Err(config(format!("steps must be >= 2, got {}", t.steps)));
        }
        self.params().validate()?;
        self.damping().validate()?;
        self.initial_state()?;
        if let Some(tp) = &self.teleport {
            fockcorr::teleport::input_state(tp.p, tp.q)?;
        }
        if let Some(w) = &self.wigner {
            self.grid_for(w)?;
            if !(w.tolerance > 0.0 && w.tolerance.is_finite()) {
                return Err(config(format!(
                    "wigner tolerance must be > 0, got {}",
                    w.tolerance
                )));
            }
        }
        if self.correlations.discord == DiscordSpec::Bruteforce && self.correlations.grid < 4 {
            return Err(config(format!(
                "discord grid must be >= 4, got {}",
                self.correlations.grid
            )));
        }
        Ok(())
    }

    pub fn window(&self) -> FockWindow {
        FockWindow::new(self.window.n1, self.window.m1)
    }

    pub fn params(&self) -> EvolutionParams {
        EvolutionParams::new(self.window(), self.nbar)
            .with_closure(match self.closure {
                Closure::Leaky => ClosureMode::Leaky,
                Closure::Paper => ClosureMode::PaperClosure,
            })
            .with_coefficients(match self.coefficients {
                Coefficients::Corrected => CoefficientSet::Corrected,
                Coefficients::Printed => CoefficientSet::Printed,
            })
            .with_substeps(self.time.substeps)
    }

    pub fn damping(&self) -> DampingModel {
        match self.model {
            ModelSpec::Markovian { gamma_m } => DampingModel::Markovian { gamma_m },
            ModelSpec::Ohmic { omega0, r } => DampingModel::NonMarkovianOhmic { omega0, r },
            ModelSpec::Kernel { omega_c } => DampingModel::KernelIntegral { omega_c },
        }
    }

    pub fn times(&self) -> Result<Vec<f64>, CliError> {
        Ok(uniform_grid(self.time.t_max, self.time.steps + 1)?)
    }

    pub fn initial_state(&self) -> Result<DensityMatrix, CliError> {
        let rho = match &self.state {
            StateSpec::Epr { a, d } => build_epr(a.value(), d.value())?,
            StateSpec::Noon { b, c } => build_noon(b.value(), c.value())?,
            StateSpec::Coherent {
                nbar_prime,
                amplitudes,
            } => {
                let amps = match amplitudes {
                    AmplitudeForm::Paper => coherent_amplitudes_paper(*nbar_prime, self.window())?,
                    AmplitudeForm::Projection => projection_amplitudes(*nbar_prime, self.window())?,
                };
                build_from_amplitudes(&amps.normalized)?
            }
        };
        Ok(rho)
    }

    pub fn correlation_options(&self) -> CorrelationOptions {
        let discord = match self.correlations.discord {
            DiscordSpec::Auto => DiscordMethod::Auto,
            DiscordSpec::Closed => DiscordMethod::Closed(DiscordVariant::default()),
            DiscordSpec::Bruteforce => DiscordMethod::BruteForce(self.correlations.grid),
        };
        CorrelationOptions { discord }
    }

    pub fn index_order(&self) -> IndexOrder {
        match self.teleport.map(|t| t.index_order).unwrap_or_default() {
            Order::Printed => IndexOrder::Printed,
            Order::Symmetric => IndexOrder::Symmetric,
        }
    }

    pub fn wigner_spec(&self) -> WignerSpec {
        self.wigner.unwrap_or_default()
    }

    pub fn grid_for(&self, spec: &WignerSpec) -> Result<PhaseSpaceGrid, CliError> {
        let extent = spec.extent.unwrap_or_else(|| default_extent(self.window()));
        Ok(PhaseSpaceGrid::new(extent, spec.points)?)
    }

    pub fn element_source(&self) -> ElementSource {
        match self.wigner_spec().elements {
            Elements::Oracle => ElementSource::Oracle,
            Elements::Closed => ElementSource::Closed,
            Elements::Paper => ElementSource::Paper,
        }
    }

    /// One-line JSON rendering used in CSV comment lines.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scenario serializes")
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }
}
