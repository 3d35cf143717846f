use thiserror::Error;

use crate::adjust::AdjustError;
use crate::ahp::AhpError;
use crate::game::GameError;
use crate::sampling::SamplingError;
use crate::scenario::ScenarioError;

/// Any failure between reading a scenario and producing a report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Adjust(#[from] AdjustError),
    #[error(transparent)]
    Ahp(#[from] AhpError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error("{0}")]
    Input(String),
}

impl Error {
    /// True when the scenario could not be read at all.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Scenario(ScenarioError::Io { .. }))
    }
}
