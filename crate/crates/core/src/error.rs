use thiserror::Error;

/// Errors raised by the simulator.
///
/// Everything here is a contract violation on the inputs (bad lattice
/// geometry, out-of-range parameters) or an outcome that leaves nothing to
/// report (no peak found, a degenerate fit).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("coordinate {value} on axis {axis} is outside [0, {side})")]
    OutOfBounds {
        axis: usize,
        value: usize,
        side: usize,
    },

    #[error("vertex index {index} is outside [0, {volume})")]
    IndexOutOfRange { index: usize, volume: usize },

    #[error("dense construction refused: N = {volume} exceeds the limit of {limit}")]
    TooLarge { volume: usize, limit: usize },

    #[error("no valid peak found: {0}")]
    NoPeak(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
