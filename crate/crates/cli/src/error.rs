use thiserror::Error;

use qutil_core::algo::AlgoError;
use qutil_core::profile::{ProfileError, SweepError};
use qutil_core::swapc::SwapcError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("runtime error: {0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }

    pub fn config(msg: impl std::fmt::Display) -> Self {
        CliError::Config(msg.to_string())
    }

    pub fn runtime(msg: impl std::fmt::Display) -> Self {
        CliError::Runtime(msg.to_string())
    }
}

impl From<AlgoError> for CliError {
    fn from(e: AlgoError) -> Self {
        match e {
            AlgoError::TooLarge { .. }
            | AlgoError::InvalidConfig(_)
            | AlgoError::Dataset(_)
            | AlgoError::NonBinaryLabels(_)
            | AlgoError::DimensionMismatch { .. }
            | AlgoError::UnsupportedOptimizer(_) => CliError::config(e),
            _ => CliError::runtime(e),
        }
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Algo(a) => a.into(),
            SweepError::UnsupportedVariable { .. } | SweepError::NoSizes => CliError::config(e),
            SweepError::Profile(ProfileError::UnknownApp(_) | ProfileError::TooFewSamples { .. }) => {
                CliError::config(e)
            }
            SweepError::Profile(_) => CliError::runtime(e),
        }
    }
}

impl From<SwapcError> for CliError {
    fn from(e: SwapcError) -> Self {
        CliError::config(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
