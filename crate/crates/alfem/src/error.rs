//! Crate-wide error type.

use thiserror::Error;

/// Errors produced while building meshes, assembling systems, or solving.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The discrete problem is structurally unsolvable (no free unknowns,
    /// no contact cells, ...).
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    /// Geometry or data that cannot be assembled.
    #[error("assembly failed: {0}")]
    Assembly(String),

    /// A linear system was numerically singular.
    #[error("numerically singular linear system")]
    Singular,

    /// A linearization inside the Newton loop was numerically singular.
    #[error("numerically singular linearization at Newton iteration {iteration}")]
    SingularAt {
        /// Zero-based Newton iteration at which factorization failed.
        iteration: usize,
    },

    /// Output files could not be written.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
