use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("property failure: {0}")]
    Property(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Property(_) => 4,
        }
    }
}

impl From<leafdbar::Error> for CliError {
    fn from(e: leafdbar::Error) -> Self {
        match e {
            leafdbar::Error::InvalidParams(_) | leafdbar::Error::UnknownBuiltin { .. } => CliError::Config(e.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}
