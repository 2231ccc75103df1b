//! Subcommand runners producing CSV files in memory.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use fockcorr::correlations::CorrelationReport;
use fockcorr::csvfmt;
use fockcorr::dynamics::{evolve_ode, Trajectory};
use fockcorr::teleport::{
    closed_form_epr, closed_form_noon, input_state, teleport_general, teleported_measures,
    ClosedForm, CLASSICAL_BOUND,
};
use fockcorr::wigner::{wigner_joint, wigner_slice, write_slice_csv, VolumeIntegrator};
use fockcorr::DensityMatrix;

use crate::error::CliError;
use crate::scenario::{Closure, Elements, Order, Scenario, StateSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Evolve,
    Correlations,
    Wigner,
    Volume,
    Teleport,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Evolve => "evolve",
            Self::Correlations => "correlations",
            Self::Wigner => "wigner",
            Self::Volume => "volume",
            Self::Teleport => "teleport",
        }
    }
}

/// Command-line flags that take precedence over the scenario file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub mode: Option<Closure>,
    pub elements: Option<Elements>,
    pub index_order: Option<Order>,
}

impl Overrides {
    pub fn apply(&self, scenario: &mut Scenario) {
        if let Some(mode) = self.mode {
            scenario.closure = mode;
        }
        if let Some(elements) = self.elements {
            let mut w = scenario.wigner_spec();
            w.elements = elements;
            scenario.wigner = Some(w);
        }
        if let (Some(order), Some(tp)) = (self.index_order, scenario.teleport.as_mut()) {
            tp.index_order = order;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFile {
    pub name: String,
    pub contents: String,
}

/// Files produced so far and the failure that stopped or flagged the run.
#[derive(Debug, Default)]
pub struct Outcome {
    pub files: Vec<OutputFile>,
    pub failure: Option<CliError>,
}

impl Outcome {
    fn failed(e: CliError) -> Self {
        Self {
            files: Vec::new(),
            failure: Some(e),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.failure.as_ref().map_or(0, CliError::exit_code)
    }
}

/// Comment line naming the command, every arbitration mode and the scenario.
pub fn comment_line(command: Command, s: &Scenario) -> String {
    let lower = |x: String| x.to_lowercase();
    format!(
        "# fockcorr {} closure={} coefficients={} elements={} index_order={} discord={} scenario={}\n",
        command.name(),
        lower(format!("{:?}", s.closure)),
        lower(format!("{:?}", s.coefficients)),
        lower(format!("{:?}", s.wigner_spec().elements)),
        s.index_order(),
        lower(format!("{:?}", s.correlations.discord)),
        s.to_json()
    )
}

pub fn evolve(s: &Scenario) -> Result<Trajectory, CliError> {
    let rho0 = s.initial_state()?;
    Ok(evolve_ode(&rho0, &s.params(), &s.damping(), &s.times()?)?)
}

fn write_trajectory(tr: &Trajectory, header: String) -> String {
    let mut buf = header.into_bytes();
    tr.write_csv(&mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

fn correlations_csv(tr: &Trajectory, s: &Scenario, header: String) -> String {
    let opts = s.correlation_options();
    let rows: Vec<(f64, CorrelationReport)> = tr
        .times
        .par_iter()
        .zip(tr.states.par_iter())
        .map(|(&t, rho)| (t, CorrelationReport::compute(rho, &opts)))
        .collect();
    let mut buf = header.into_bytes();
    CorrelationReport::write_csv(&rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

fn origin_value(rho: &DensityMatrix, s: &Scenario) -> Result<f64, CliError> {
    let zero = Complex64::new(0.0, 0.0);
    Ok(wigner_joint(
        rho,
        zero,
        zero,
        s.window(),
        s.element_source(),
    )?)
}

fn wigner_files(tr: &Trajectory, s: &Scenario, prefix: &str) -> Result<Vec<OutputFile>, CliError> {
    let values: Vec<f64> = tr
        .states
        .par_iter()
        .map(|rho| origin_value(rho, s))
        .collect::<Result<_, _>>()?;
    let mut series = comment_line(Command::Wigner, s);
    series.push_str("t,W00\n");
    for (t, w) in tr.times.iter().zip(values) {
        writeln!(series, "{}", csvfmt::num_row(&[*t, w])).expect("writing to string");
    }
    let grid = s.grid_for(&s.wigner_spec())?;
    let last = tr.states.last().expect("trajectory is never empty");
    let slice = wigner_slice(last, s.window(), grid, s.element_source())?;
    let mut slice_csv = comment_line(Command::Wigner, s);
    writeln!(
        slice_csv,
        "# slice at t = {}, Im alpha = Im beta = 0",
        csvfmt::num(*tr.times.last().unwrap())
    )
    .expect("writing to string");
    let mut buf = slice_csv.into_bytes();
    write_slice_csv(&slice, &mut buf).expect("writing to memory");
    Ok(vec![
        OutputFile {
            name: format!("{prefix}wigner.csv"),
            contents: series,
        },
        OutputFile {
            name: format!("{prefix}wigner_slice.csv"),
            contents: String::from_utf8(buf).expect("csv is utf-8"),
        },
    ])
}

fn volume_file(tr: &Trajectory, s: &Scenario, name: String) -> Outcome {
    let spec = s.wigner_spec();
    let integrator = match s
        .grid_for(&spec)
        .and_then(|grid| Ok(VolumeIntegrator::new(s.window(), grid, s.element_source())?))
    {
        Ok(i) => i,
        Err(e) => return Outcome::failed(e),
    };
    let mut csv = comment_line(Command::Volume, s);
    csv.push_str("t,W00,V,V_half,integral,converged\n");
    let mut failure = None;
    for (t, rho) in tr.iter() {
        let row = origin_value(rho, s).and_then(|w| {
            integrator
                .report(rho, spec.tolerance)
                .map(|r| (w, r))
                .map_err(CliError::from)
        });
        let (w, r) = match row {
            Ok(x) => x,
            Err(e) => {
                failure = Some(e);
                break;
            }
        };
        let flag = if r.converged { "1" } else { "0" };
        writeln!(
            csv,
            "{},{flag}",
            csvfmt::num_row(&[t, w, r.volume, r.volume_half, r.integral])
        )
        .expect("writing to string");
        if !r.converged && failure.is_none() {
            failure = Some(CliError::Quadrature(format!(
                "negativity volume not converged at t = {t}: {} vs {} at half resolution",
                r.volume, r.volume_half
            )));
        }
    }
    Outcome {
        files: vec![OutputFile {
            name,
            contents: csv,
        }],
        failure,
    }
}

fn closed_form(rho: &DensityMatrix, s: &Scenario, p: f64, q: f64) -> Option<ClosedForm> {
    match s.state {
        StateSpec::Epr { .. } => closed_form_epr(rho, p, q).ok(),
        StateSpec::Noon { .. } => closed_form_noon(rho, p, q).ok(),
        StateSpec::Coherent { .. } => closed_form_epr(rho, p, q)
            .or_else(|_| closed_form_noon(rho, p, q))
            .ok(),
    }
}

pub const TELEPORT_HEADER: &str = "t,F,F_trace,k1,k1_flip,k2,k3,C_out,LN_out,QD_out,C_out_closed,LN_out_closed,QD_out_closed,channel_trace,weight_sum,trace_out,above_classical,non_physical";

fn teleport_csv(tr: &Trajectory, s: &Scenario) -> Result<String, CliError> {
    let spec = s
        .teleport
        .ok_or_else(|| CliError::Config("scenario has no [teleport] section".into()))?;
    let input = input_state(spec.p, spec.q)?;
    let order = s.index_order();
    let opts = s.correlation_options();
    let rows: Vec<Result<String, CliError>> = tr
        .times
        .par_iter()
        .zip(tr.states.par_iter())
        .map(|(&t, rho)| {
            let general = teleport_general(rho, &input, order)?;
            let m = teleported_measures(&general, &opts);
            let nan = f64::NAN;
            let (f, k, closed) = match closed_form(rho, s, spec.p, spec.q) {
                Some(c) => (
                    c.fidelity_printed(),
                    [c.k1, c.k1_flip, c.k2, c.k3],
                    [
                        c.concurrence_printed(),
                        c.log_negativity_printed(),
                        c.discord_printed(),
                    ],
                ),
                None => (nan, [nan; 4], [nan; 3]),
            };
            Ok(format!(
                "{},{},{}",
                csvfmt::num_row(&[
                    t,
                    f,
                    general.fidelity,
                    k[0],
                    k[1],
                    k[2],
                    k[3],
                    m.concurrence,
                    m.log_negativity,
                    m.discord,
                    closed[0],
                    closed[1],
                    closed[2],
                    general.channel_trace,
                    general.weight_sum(),
                    general.rho_out.trace(),
                ]),
                u8::from(f > CLASSICAL_BOUND),
                u8::from(input.non_physical)
            ))
        })
        .collect();
    let mut csv = comment_line(Command::Teleport, s);
    if input.non_physical {
        csv.push_str("# warning: input state is not positive semidefinite; measures are formal\n");
    }
    csv.push_str(TELEPORT_HEADER);
    csv.push('\n');
    for r in rows {
        csv.push_str(&r?);
        csv.push('\n');
    }
    Ok(csv)
}

/// Run one command; file names are prefixed with `prefix`.
pub fn run(command: Command, s: &Scenario, prefix: &str) -> Outcome {
    let tr = match evolve(s) {
        Ok(tr) => tr,
        Err(e) => return Outcome::failed(e),
    };
    let single = |name: &str, contents: Result<String, CliError>| match contents {
        Ok(contents) => Outcome {
            files: vec![OutputFile {
                name: format!("{prefix}{name}"),
                contents,
            }],
            failure: None,
        },
        Err(e) => Outcome::failed(e),
    };
    match command {
        Command::Evolve => single(
            "trajectory.csv",
            Ok(write_trajectory(&tr, comment_line(command, s))),
        ),
        Command::Correlations => single(
            "correlations.csv",
            Ok(correlations_csv(&tr, s, comment_line(command, s))),
        ),
        Command::Teleport => single("teleport.csv", teleport_csv(&tr, s)),
        Command::Wigner => match wigner_files(&tr, s, prefix) {
            Ok(files) => Outcome {
                files,
                failure: None,
            },
            Err(e) => Outcome::failed(e),
        },
        Command::Volume => volume_file(&tr, s, format!("{prefix}volume.csv")),
    }
}
