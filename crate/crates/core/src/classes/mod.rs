//! Polynomial-time SPR deciders and sequence builders for the supported
//! graph classes. Representations are inputs, not recognized.

mod bounded;
mod circle;
mod circular_arc;
mod hypercube;
mod permutation;
mod weakly_modular;

pub use bounded::{bounded_diameter_solve, BoundedParams, DEFAULT_PATH_CAP};
pub use circle::{chord_label, circle_solve, ChordRep, LabelEntry, PathLabel, Side};
pub use circular_arc::{circular_arc_solve, ArcRep};
pub use hypercube::{
    hypercube_graph, hypercube_instance, hypercube_solve, kendall_tau, ones,
    path_to_permutation, permutation_to_path, HypercubeRep,
};
pub use permutation::{lr_edge_type, permutation_solve, EdgeTypeLR, PermutationRep};
pub use weakly_modular::{
    build_look_table, triangle_condition_violations, weakly_modular_solve, LookTable, WmOutcome,
};

use crate::oracle::ReconfigSequence;

/// Result of a class solver: the verdict, a witnessing sequence when the
/// answer is yes, and whether the sequence came from the generic oracle
/// rather than the class-specific merge.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub reconfigurable: bool,
    pub sequence: Option<ReconfigSequence>,
    pub oracle_fallback: bool,
}

impl SolveOutcome {
    pub(crate) fn yes(sequence: ReconfigSequence) -> Self {
        SolveOutcome {
            reconfigurable: true,
            sequence: Some(sequence),
            oracle_fallback: false,
        }
    }

    pub(crate) fn no() -> Self {
        SolveOutcome {
            reconfigurable: false,
            sequence: None,
            oracle_fallback: false,
        }
    }
}

/// A class-specific geometric representation bundled with an instance file.
#[derive(Debug, Clone)]
pub enum Representation {
    Permutation(PermutationRep),
    Chords(ChordRep),
    Arcs(ArcRep),
    Hypercube(HypercubeRep),
}
