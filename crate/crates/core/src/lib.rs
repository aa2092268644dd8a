//! Shortest path reconfiguration toolkit.
//!
//! Decides whether one s-t shortest path can be transformed into another by
//! changing one vertex (or a block of up to k contiguous vertices) at a time,
//! with every intermediate path still shortest. Provides:
//!
//! - an exact oracle over the explicit reconfiguration graph,
//! - polynomial-time solvers for permutation, circle, circular-arc,
//!   weakly-modular, Boolean-hypercube, and bounded-distance instances,
//! - instance transformers (line graphs, graph powers, subdivisions, gadget
//!   chains) with their path correspondences,
//! - exact optimizers for the MinSum / MinMax / MinTop-l cost variants,
//! - seeded solver-versus-oracle verification sweeps.
//!
//! Everything is deterministic: identical inputs give identical outputs.

pub mod classes;
pub mod cost;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod reductions;
pub mod verify;

pub use error::{Error, PathDefect, Result};
pub use graph::{BfsLayering, Graph, ShortestPath, StInstance};
pub use oracle::{
    k_step_neighbors, kstep_between, large_k_shortcut, reconfig_diameter,
    shortest_reconfig_sequence, Diameter, KStep, ReconfigGraph, ReconfigSequence,
};

pub use classes::DEFAULT_PATH_CAP;
