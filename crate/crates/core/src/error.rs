use thiserror::Error;

use crate::group::GroupTag;

/// Errors raised by the engines.
///
/// `Refusal`-type variants mean the input was well formed but outside what an
/// engine is willing to compute (rank limits, unsupported embeddings).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScfError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("group mismatch: {left} vs {right}")]
    GroupMismatch { left: GroupTag, right: GroupTag },
    #[error("could not parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("rank {rank} exceeds the orbit oracle limit {limit}")]
    OracleLimit { rank: usize, limit: usize },
    #[error("unsupported embedding: {0}")]
    UnsupportedEmbedding(String),
    #[error("degenerate witness: {0}")]
    DegenerateWitness(String),
    #[error("no witness: {0}")]
    NoWitness(String),
}

impl ScfError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        ScfError::InvalidInput(msg.into())
    }

    /// True for errors where the engine declined to run rather than the
    /// caller supplying malformed input.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            ScfError::OracleLimit { .. }
                | ScfError::UnsupportedEmbedding(_)
                | ScfError::DegenerateWitness(_)
                | ScfError::NoWitness(_)
        )
    }
}

pub type Result<T, E = ScfError> = std::result::Result<T, E>;
