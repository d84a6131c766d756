//! Numerical experiments checking the asymptotic estimates on concrete
//! functions.

mod config;
mod experiments;
mod report;
mod slope;

use thiserror::Error;

pub use config::{Config, ConfigError};
pub use experiments::{run_experiment, ExperimentId};
pub use report::{ExperimentReport, Row, Verdict, SCHEMA};
pub use slope::{estimate_slope, SlopeFit, MAX_MASKED_FRACTION, MIN_PAIRS};

use crate::funcmodel::FuncError;
use crate::growth::GrowthError;
use crate::parse::ParseError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Func(#[from] FuncError),
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
}
