use std::fmt;

use fraclap_core::Error;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Shape(String),
    BlowUp(String),
    Numeric(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Shape(_) => 3,
            CliError::BlowUp(_) => 4,
            CliError::Numeric(_) => 5,
            CliError::Io(_) => 6,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, msg) = match self {
            CliError::Config(m) => ("configuration error", m),
            CliError::Shape(m) => ("input shape error", m),
            CliError::BlowUp(m) => ("blow-up", m),
            CliError::Numeric(m) => ("numeric failure", m),
            CliError::Io(m) => ("i/o error", m),
        };
        write!(f, "{kind}: {msg}")
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::InvalidParameter { .. } | Error::Domain { .. } | Error::IndexOverflow(_) => CliError::Config(msg),
            Error::LengthMismatch { .. } | Error::EmptyInput(_) => CliError::Shape(msg),
            Error::BlowUp { .. } => CliError::BlowUp(msg),
            Error::NonConvergence { .. } => CliError::Numeric(msg),
            Error::Sink(_) => CliError::Io(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
