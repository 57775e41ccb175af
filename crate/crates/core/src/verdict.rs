use serde::{Deserialize, Serialize};

/// Outcome of a bounded fusion-control search.
///
/// `Holds` only certifies that nothing failed below `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum ScfVerdict<W> {
    Holds { bound: u64 },
    Fails(W),
}

impl<W> ScfVerdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, ScfVerdict::Holds { .. })
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            ScfVerdict::Fails(w) => Some(w),
            ScfVerdict::Holds { .. } => None,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> ScfVerdict<V> {
        match self {
            ScfVerdict::Holds { bound } => ScfVerdict::Holds { bound },
            ScfVerdict::Fails(w) => ScfVerdict::Fails(f(w)),
        }
    }
}
