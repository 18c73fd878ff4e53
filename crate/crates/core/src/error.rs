//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by graph construction, search, witness extraction and
/// bound evaluation.
#[derive(Debug, Error)]
pub enum Error {
    /// Materializing a graph would exceed the configured vertex cap.
    #[error("vertex cap exceeded: {needed} vertices requested, cap is {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    /// Exact search invoked on a graph larger than the configured cap.
    #[error("exact-search cap exceeded: graph has {n} vertices, cap is {cap} (set force to proceed)")]
    SearchCapExceeded { n: usize, cap: usize },

    /// A tuple's length does not match the exponent of the power it indexes.
    #[error("tuple length {got} does not match exponent {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A vertex index outside `[0, n)`.
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },

    /// A stated hypothesis of the bound or construction does not hold.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    /// A recipe that cannot be executed as written.
    #[error("malformed recipe: {0}")]
    MalformedRecipe(String),

    /// A ladder whose entries violate its structural invariants.
    #[error("invalid ladder: {0}")]
    InvalidLadder(String),

    /// A characteristic the ladder promised about the base graph failed to
    /// materialize during witness extraction.
    #[error("ladder not certified for this base graph: {0}")]
    LadderNotCertified(String),

    /// The bucket selection found no qualifying level. This cannot happen
    /// for a ladder satisfying its invariants; seeing it means the ladder
    /// (or the counts handed in) was invalid.
    #[error("internal contradiction in bucket selection: {0}")]
    BucketContradiction(String),

    /// Malformed graph file or expression input.
    #[error("parse error: {0}")]
    Parse(String),

    /// A caller-supplied argument outside the operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
