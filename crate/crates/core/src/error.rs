use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("invalid link budget: {0}")]
    InvalidLinkBudget(String),
    #[error("distance must be positive, got {0} m")]
    NonpositiveDistance(f64),
    #[error("noise power must be positive, got {0} W")]
    NonpositiveNoise(f64),
    #[error("a surface needs at least one element")]
    ZeroElements,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("quantization bit depth must be in 1..=8, got {0}")]
    InvalidBitDepth(u32),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("trial count must be at least 1")]
    EmptyTrials,
    #[error("invalid value {value} for sweep axis {axis}: {reason}")]
    InvalidAxisValue {
        axis: &'static str,
        value: f64,
        reason: String,
    },
    #[error("empty sweep result")]
    EmptySweep,
}
