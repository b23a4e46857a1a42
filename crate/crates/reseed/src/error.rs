use std::path::PathBuf;

/// Errors produced by graph construction, clustering, and evaluation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    /// A data file could not be parsed. `line` is 1-based.
    #[error("{}:{line}: {msg}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    /// A parameter or precondition check failed before any work started.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The graph is not connected; propagation cannot reach every vertex.
    #[error("graph has {0} components")]
    Disconnected(usize),

    /// Propagation hit its step cap before reaching the coverage target.
    /// Happens on disconnected graphs and, for the plain walk variant, on
    /// bipartite graphs where the support oscillates forever.
    #[error("propagation did not reach coverage within {steps} steps (disconnected or bipartite graph?)")]
    CoverageStalled { steps: usize },

    /// Every entry of a score column underflowed to zero.
    #[error("score column {column} underflowed to all zeros")]
    Underflow { column: usize },

    /// A vertex had no nonzero score in any column at harvest time.
    #[error("vertex {0} has no nonzero score in any cluster")]
    UncoveredVertex(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
