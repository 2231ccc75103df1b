//! Figure presets. Rates are set to one so that `t` reads as `gamma_M t`
//! or `omega0 t`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::CliError;
use crate::run::{run, Command, Outcome, Overrides};
use crate::scenario::*;

pub const FIGURES: [&str; 8] = [
    "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9",
];

/// Ohmic runs stop just before the first maximum of `Gamma(omega0 t)`, which lies
/// near 5.695 for `r = 0.1`, 1.038 for `r = 1` and 1.754 for `r = 5`. Past it the
/// accumulated decoherence falls and the state recoheres.
fn ohmic_t_max(r: f64) -> f64 {
    if r < 0.5 {
        5.6
    } else if r < 2.0 {
        1.0
    } else {
        1.7
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub name: String,
    pub command: Command,
    pub scenario: Scenario,
}

fn epr() -> StateSpec {
    StateSpec::Epr {
        a: Cx::Real(FRAC_1_SQRT_2),
        d: Cx::Real(FRAC_1_SQRT_2),
    }
}

fn noon() -> StateSpec {
    StateSpec::Noon {
        b: Cx::Real(FRAC_1_SQRT_2),
        c: Cx::Real(FRAC_1_SQRT_2),
    }
}

fn coherent() -> StateSpec {
    StateSpec::Coherent {
        nbar_prime: 1.0,
        amplitudes: AmplitudeForm::Paper,
    }
}

fn markovian() -> (ModelSpec, TimeSpec) {
    (ModelSpec::Markovian { gamma_m: 1.0 }, time(3.0, 300))
}

fn ohmic(r: f64) -> (ModelSpec, TimeSpec) {
    (
        ModelSpec::Ohmic { omega0: 1.0, r },
        time(ohmic_t_max(r), 300),
    )
}

fn time(t_max: f64, steps: usize) -> TimeSpec {
    TimeSpec {
        t_max,
        steps,
        substeps: 100,
    }
}

fn scenario(state: StateSpec, m1: u32, (model, time): (ModelSpec, TimeSpec)) -> Scenario {
    Scenario {
        schema: SCHEMA_VERSION,
        state,
        window: WindowSpec { n1: m1, m1 },
        nbar: 0.0,
        model,
        closure: Closure::Leaky,
        coefficients: Coefficients::Corrected,
        time,
        correlations: CorrelationSpec::default(),
        teleport: None,
        wigner: None,
    }
}

fn with_teleport(mut s: Scenario, p: f64, q: f64) -> Scenario {
    s.teleport = Some(TeleportSpec {
        p,
        q,
        index_order: Order::Symmetric,
    });
    s
}

fn with_wigner(mut s: Scenario, steps: usize) -> Scenario {
    s.wigner = Some(WignerSpec::default());
    s.time.steps = steps;
    s
}

fn panel(name: &str, command: Command, scenario: Scenario) -> Panel {
    Panel {
        name: name.to_string(),
        command,
        scenario,
    }
}

pub fn figure(id: &str) -> Result<Vec<Panel>, CliError> {
    use Command::*;
    let panels = match id {
        "fig2" => vec![
            panel("fig2a", Correlations, scenario(epr(), 0, markovian())),
            panel("fig2b", Evolve, scenario(epr(), 0, markovian())),
        ],
        "fig3" => vec![
            panel("fig3a", Correlations, scenario(epr(), 0, ohmic(1.0))),
            panel("fig3b", Correlations, scenario(epr(), 0, ohmic(0.1))),
            panel("fig3c", Correlations, scenario(epr(), 0, ohmic(5.0))),
            panel("fig3d", Evolve, scenario(epr(), 0, ohmic(1.0))),
        ],
        "fig4" => vec![
            panel("fig4a", Correlations, scenario(noon(), 0, markovian())),
            panel("fig4b", Correlations, scenario(noon(), 1, markovian())),
            panel("fig4c", Correlations, scenario(noon(), 0, ohmic(1.0))),
            panel("fig4d", Correlations, scenario(noon(), 0, ohmic(0.1))),
        ],
        "fig5" => vec![
            panel(
                "fig5a",
                Volume,
                with_wigner(scenario(coherent(), 0, markovian()), 30),
            ),
            panel(
                "fig5b",
                Volume,
                with_wigner(scenario(coherent(), 2, markovian()), 30),
            ),
            panel(
                "fig5c",
                Volume,
                with_wigner(scenario(coherent(), 0, ohmic(1.0)), 30),
            ),
            panel(
                "fig5d",
                Volume,
                with_wigner(scenario(coherent(), 2, ohmic(1.0)), 30),
            ),
        ],
        "fig6" => vec![panel(
            "fig6",
            Teleport,
            with_teleport(scenario(epr(), 0, markovian()), 0.99, 0.97),
        )],
        "fig7" => [("fig7a", 1.0), ("fig7b", 0.1), ("fig7c", 5.0)]
            .into_iter()
            .map(|(name, r)| {
                panel(
                    name,
                    Teleport,
                    with_teleport(scenario(epr(), 0, ohmic(r)), 0.99, 0.97),
                )
            })
            .collect(),
        "fig8" => vec![
            panel(
                "fig8a",
                Teleport,
                with_teleport(scenario(noon(), 0, markovian()), 0.99, 0.97),
            ),
            panel(
                "fig8b",
                Teleport,
                with_teleport(scenario(noon(), 1, markovian()), 0.99, 0.99),
            ),
        ],
        "fig9" => [("fig9a", 1.0), ("fig9b", 0.1), ("fig9c", 5.0)]
            .into_iter()
            .map(|(name, r)| {
                panel(
                    name,
                    Teleport,
                    with_teleport(scenario(noon(), 0, ohmic(r)), 0.99, 0.99),
                )
            })
            .collect(),
        other => {
            return Err(CliError::Config(format!(
                "unknown figure {other:?}, expected one of {}",
                FIGURES.join(", ")
            )))
        }
    };
    Ok(panels)
}

/// Run every panel of a figure; the first failure is reported after all
/// panels have been attempted.
pub fn run_figure(id: &str, overrides: &Overrides) -> Outcome {
    let panels = match figure(id) {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                files: Vec::new(),
                failure: Some(e),
            }
        }
    };
    let mut all = Outcome::default();
    for mut p in panels {
        overrides.apply(&mut p.scenario);
        let out = run(p.command, &p.scenario, &format!("{}_", p.name));
        all.files.extend(out.files);
        if all.failure.is_none() {
            all.failure = out.failure;
        }
    }
    all
}
