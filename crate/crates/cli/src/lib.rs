//! Scenario files, runners and figure presets behind the `fockcorr` binary.

mod error;
pub mod presets;
pub mod run;
pub mod scenario;

pub use error::CliError;
pub use scenario::{parse_scenario, Scenario};
