use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("points {0:?} violate general position")]
    GeneralPositionViolation([usize; 3]),

    #[error("class sizes do not match the graph: {0}")]
    ClassSizeMismatch(String),

    #[error("drawing has {points} points but the graph has {vertices} vertices")]
    VertexCountMismatch { points: usize, vertices: usize },

    #[error("integer coordinate {0} exceeds the supported bound")]
    CoordinateOutOfRange(i64),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("{n} is not divisible by {r}")]
    Divisibility { n: u64, r: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error("degenerate geodesic between lateral edges {0:?} and {1:?}")]
    DegenerateGeodesic((usize, usize), (usize, usize)),

    #[error("cylindrical model of K_{n} has {found} crossings, expected {expected}")]
    ModelInconsistent { n: usize, found: u64, expected: u64 },

    #[error("k-edge identity violated: {0}")]
    IdentityViolation(String),

    #[error("guest has {guest} vertices but host has {host}")]
    SizeMismatch { guest: usize, host: usize },

    #[error("no valid splitting direction at vertex {0}")]
    NoValidDirection(usize),

    #[error("planting failed after {attempts} attempts: {reason}")]
    PlantingFailed { attempts: usize, reason: String },

    #[error("crossing classification mismatch for {signature}-cluster crossings: found {found}, expected {expected}")]
    ClassificationMismatch { signature: usize, found: u64, expected: u64 },

    #[error("perturbation failed: {0}")]
    PerturbationFailed(String),

    #[error("incremental count {incremental} disagrees with recount {recount}")]
    CheckpointMismatch { incremental: u64, recount: u64 },

    #[error("unknown library drawing {0:?}")]
    UnknownSeed(String),
}

impl Error {
    /// Errors raised by internal self-checks rather than by bad input.
    pub fn is_self_check_failure(&self) -> bool {
        matches!(
            self,
            Error::ModelInconsistent { .. }
                | Error::IdentityViolation(_)
                | Error::PlantingFailed { .. }
                | Error::ClassificationMismatch { .. }
                | Error::PerturbationFailed(_)
                | Error::CheckpointMismatch { .. }
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
