use thiserror::Error;

use crate::instance::Violation;
use crate::twdp::DecompositionViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {}", join(.0))]
    InvalidInstance(Vec<Violation>),

    #[error("orientation is infeasible: tree arcs plus oriented edges contain a directed cycle")]
    Infeasible,

    #[error("orientation refers to {found} edges but the instance has {expected}")]
    OrientationLength { expected: usize, found: usize },

    #[error("instance too large for exhaustive search: {edges} edges exceeds limit {limit}")]
    TooLarge { edges: usize, limit: usize },

    #[error("instance too large for the order oracle: more than {limit} tree ideals")]
    TooManyStates { limit: usize },

    #[error("tree decomposition width {width} exceeds cap {cap}")]
    WidthOverCap { width: usize, cap: usize },

    #[error("invalid tree decomposition: {}", join(.0))]
    InvalidDecomposition(Vec<DecompositionViolation>),

    #[error("not a two-arm instance: {0}")]
    NotTwoArm(String),

    #[error("tree is not a BFS tree: {0}")]
    NotBfsTree(String),

    #[error("embedding rejected: {0}")]
    Embedding(String),

    #[error("slice parameter d must be at least 2, got {0}")]
    SliceParameter(usize),

    #[error("node weights overflow the exact integer scale")]
    WeightOverflow,

    #[error("invalid set cover instance: {0}")]
    InvalidSetCover(String),

    #[error("output failed the acyclicity certificate: {0}")]
    Uncertified(String),

    #[error("malformed document: {0}")]
    Format(String),
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
