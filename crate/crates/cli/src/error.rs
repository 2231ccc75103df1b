use thiserror::Error;

/// Failure of a command, carrying the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("integration error: {0}")]
    Integration(String),
    #[error("quadrature error: {0}")]
    Quadrature(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Integration(_) => 3,
            Self::Quadrature(_) => 4,
        }
    }
}

impl From<fockcorr::Error> for CliError {
    fn from(e: fockcorr::Error) -> Self {
        use fockcorr::Error as E;
        match e {
            E::Integration { .. } | E::Overflow { .. } => Self::Integration(e.to_string()),
            E::Quadrature { .. } => Self::Quadrature(e.to_string()),
            other => Self::Config(other.to_string()),
        }
    }
}
