use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fockcorr_cli::presets::run_figure;
use fockcorr_cli::run::{run, Command, Outcome, Overrides};
use fockcorr_cli::scenario::{Closure, Elements, Order};
use fockcorr_cli::{parse_scenario, CliError};

#[derive(Parser)]
#[command(
    name = "fockcorr",
    version,
    about = "Two-cavity Fock-window dynamics, correlations and teleportation"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// Output directory for CSV files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Closure of the rho_44 equation.
    #[arg(long, global = true)]
    mode: Option<Mode>,
    /// Source of displaced-parity elements.
    #[arg(long, global = true)]
    elements: Option<ElementsArg>,
    /// Pauli index order on the right of the teleported state.
    #[arg(long = "index-order", global = true)]
    index_order: Option<IndexOrderArg>,
}

#[derive(Subcommand)]
enum Sub {
    /// Density-matrix trajectory.
    Evolve(ScenarioArg),
    /// N, LN, C, QD and companions per time.
    Correlations(ScenarioArg),
    /// W at the phase-space origin per time and a slice at the final time.
    Wigner(ScenarioArg),
    /// Negativity volume per time.
    Volume(ScenarioArg),
    /// Teleportation fidelity and output measures per time.
    Teleport(ScenarioArg),
    /// Preset figure bundle (fig2 .. fig9).
    Figures { id: String },
}

#[derive(clap::Args)]
struct ScenarioArg {
    #[arg(long)]
    scenario: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Leaky,
    Paper,
}

#[derive(Clone, Copy, ValueEnum)]
enum ElementsArg {
    Oracle,
    Closed,
    Paper,
}

#[derive(Clone, Copy, ValueEnum)]
enum IndexOrderArg {
    Printed,
    Symmetric,
}

fn overrides(cli: &Cli) -> Overrides {
    Overrides {
        mode: cli.mode.map(|m| match m {
            Mode::Leaky => Closure::Leaky,
            Mode::Paper => Closure::Paper,
        }),
        elements: cli.elements.map(|e| match e {
            ElementsArg::Oracle => Elements::Oracle,
            ElementsArg::Closed => Elements::Closed,
            ElementsArg::Paper => Elements::Paper,
        }),
        index_order: cli.index_order.map(|o| match o {
            IndexOrderArg::Printed => Order::Printed,
            IndexOrderArg::Symmetric => Order::Symmetric,
        }),
    }
}

fn run_scenario(command: Command, path: &Path, ov: &Overrides) -> Outcome {
    let loaded = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
        .and_then(|text| parse_scenario(&text));
    match loaded {
        Ok(mut s) => {
            ov.apply(&mut s);
            if let Err(e) = s.validate() {
                return Outcome {
                    files: Vec::new(),
                    failure: Some(e),
                };
            }
            run(command, &s, "")
        }
        Err(e) => Outcome {
            files: Vec::new(),
            failure: Some(e),
        },
    }
}

fn write_files(dir: &Path, outcome: &Outcome) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Config(format!("{}: {e}", dir.display())))?;
    for f in &outcome.files {
        let path = dir.join(&f.name);
        fs::write(&path, &f.contents)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ov = overrides(&cli);
    let outcome = match &cli.command {
        Sub::Evolve(a) => run_scenario(Command::Evolve, &a.scenario, &ov),
        Sub::Correlations(a) => run_scenario(Command::Correlations, &a.scenario, &ov),
        Sub::Wigner(a) => run_scenario(Command::Wigner, &a.scenario, &ov),
        Sub::Volume(a) => run_scenario(Command::Volume, &a.scenario, &ov),
        Sub::Teleport(a) => run_scenario(Command::Teleport, &a.scenario, &ov),
        Sub::Figures { id } => run_figure(id, &ov),
    };
    if let Err(e) = write_files(&cli.out, &outcome) {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    for f in &outcome.files {
        eprintln!("wrote {}", cli.out.join(&f.name).display());
    }
    match &outcome.failure {
        Some(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        None => ExitCode::SUCCESS,
    }
}
