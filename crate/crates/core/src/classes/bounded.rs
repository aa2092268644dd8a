//! Exact SPR for bounded-distance instances via the explicit reconfiguration
//! graph. With `d(s,t) = c` there are at most `n^c` shortest paths, so the
//! oracle stays polynomial for constant c; split and co-bipartite graphs
//! (diameter at most 3) always land here.

use crate::classes::SolveOutcome;
use crate::error::{Error, Result};
use crate::graph::{ShortestPath, StInstance};
use crate::oracle::shortest_reconfig_sequence;

pub const DEFAULT_PATH_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy)]
pub struct BoundedParams {
    /// Largest admissible `d(s,t)`.
    pub c_max: usize,
    pub path_cap: usize,
}

impl Default for BoundedParams {
    fn default() -> Self {
        BoundedParams {
            c_max: 6,
            path_cap: DEFAULT_PATH_CAP,
        }
    }
}

pub fn bounded_diameter_solve(
    instance: &StInstance,
    p: &ShortestPath,
    q: &ShortestPath,
    params: &BoundedParams,
) -> Result<SolveOutcome> {
    if instance.st_distance() > params.c_max {
        return Err(Error::CapExceeded {
            cap: params.path_cap,
        });
    }
    match shortest_reconfig_sequence(instance, p, q, 1, params.path_cap)? {
        Some(seq) => Ok(SolveOutcome::yes(seq)),
        None => Ok(SolveOutcome::no()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, cycle_graph};
    use crate::graph::Graph;

    #[test]
    fn equal_paths_are_trivially_yes() {
        let inst = StInstance::new(cycle_graph(4), 0, 2).unwrap();
        let p = ShortestPath::new(&inst, vec![0, 1, 2]).unwrap();
        let out = bounded_diameter_solve(&inst, &p, &p, &BoundedParams::default()).unwrap();
        assert!(out.reconfigurable);
    }

    #[test]
    fn c6_antipodal_is_no() {
        let inst = StInstance::new(cycle_graph(6), 0, 3).unwrap();
        let p = ShortestPath::new(&inst, vec![0, 1, 2, 3]).unwrap();
        let q = ShortestPath::new(&inst, vec![0, 5, 4, 3]).unwrap();
        let out = bounded_diameter_solve(&inst, &p, &q, &BoundedParams::default()).unwrap();
        assert!(!out.reconfigurable);
        assert!(out.sequence.is_none());
    }

    #[test]
    fn rejects_distance_above_c_max() {
        let inst = StInstance::new(cycle_graph(16), 0, 8).unwrap();
        let p = ShortestPath::new(&inst, (0..=8).collect()).unwrap();
        let params = BoundedParams {
            c_max: 6,
            path_cap: 10,
        };
        assert!(matches!(
            bounded_diameter_solve(&inst, &p, &p, &params),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn split_graph_instances_resolve() {
        // Clique {0,1,2} plus independent {3,4}, each attached to the clique:
        // a split graph, so d(s,t) <= 3 and the solver always resolves.
        let mut g = complete_graph(3);
        let mut edges = g.edges();
        edges.push((0, 3));
        edges.push((1, 4));
        g = Graph::from_edges(5, &edges).unwrap();
        let inst = StInstance::new(g, 3, 4).unwrap();
        assert!(inst.st_distance() <= 3);
        let paths = inst.enumerate_shortest_paths(100).unwrap();
        for p in &paths {
            for q in &paths {
                bounded_diameter_solve(&inst, p, q, &BoundedParams::default()).unwrap();
            }
        }
    }
}
