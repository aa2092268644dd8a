//! Error types shared across the crate.

use thiserror::Error;

/// Why a vertex list failed shortest-path validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathDefect {
    /// The list is empty.
    Empty,
    /// A vertex id is outside `0..n`.
    VertexOutOfRange,
    /// The list does not start at `s` or end at `t`.
    WrongEndpoints,
    /// A vertex appears more than once.
    RepeatedVertex,
    /// Two consecutive vertices are not adjacent.
    NotAdjacent,
    /// The walk is longer than `d(s,t)`.
    WrongLength,
}

impl std::fmt::Display for PathDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let msg = match self {
            PathDefect::Empty => "empty vertex list",
            PathDefect::VertexOutOfRange => "vertex id out of range",
            PathDefect::WrongEndpoints => "does not run from s to t",
            PathDefect::RepeatedVertex => "repeated vertex",
            PathDefect::NotAdjacent => "consecutive vertices not adjacent",
            PathDefect::WrongLength => "longer than the s-t distance",
        };
        f.write_str(msg)
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid shortest path: {0}")]
    InvalidPath(PathDefect),
    #[error("shortest-path enumeration exceeded cap {cap}")]
    CapExceeded { cap: usize },
    #[error("vertices {u} and {v} are in different components")]
    DisconnectedPair { u: usize, v: usize },
    #[error("edge ({u},{v}) lies on no s-t shortest path")]
    EdgeNotOnShortestPath { u: usize, v: usize },
    #[error("representation does not match the instance graph: {0}")]
    InvalidRepresentation(String),
    #[error("chord of vertex {chord} receives conflicting orientations")]
    OrientationConflict { chord: usize },
    #[error("no common parent below layer {layer} for pair ({u},{v})")]
    TriangleConditionViolated { layer: usize, u: usize, v: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("permutations are not over the same element set")]
    DomainMismatch,
    #[error("graph has no edges")]
    EmptyGraph,
}

pub type Result<T> = std::result::Result<T, Error>;
