use thiserror::Error;

use crate::config::FieldError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {}", join(.0))]
    Config(Vec<FieldError>),
    #[error("cannot read config file: {0}")]
    ConfigFile(String),
    #[error("cannot parse report: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join(errs: &[FieldError]) -> String {
    errs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
