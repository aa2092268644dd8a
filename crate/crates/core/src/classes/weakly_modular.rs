//! SPR for weakly modular (hence bridged and chordal) graphs: a layer-by-layer
//! merge whose common parents come from a precomputed LOOK table, giving the
//! quadratic-time dynamic program.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{Graph, ShortestPath, StInstance};
use crate::oracle::{KStep, ReconfigSequence};

/// For every same-layer vertex pair, the least-id common neighbor one layer
/// closer to `s` (absent when none exists).
#[derive(Debug, Clone)]
pub struct LookTable {
    entries: HashMap<(usize, usize), usize>,
}

impl LookTable {
    /// Common previous-layer parent of `u` and `v`, both in the same BFS
    /// layer from `s`.
    pub fn look(&self, u: usize, v: usize) -> Option<usize> {
        self.entries.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Builds the LOOK table by intersecting previous-layer neighborhoods of
/// every same-layer pair. Sorted neighbor lists make the stored parent the
/// least-id one.
pub fn build_look_table(instance: &StInstance) -> LookTable {
    let g = instance.graph();
    let layering = instance.layering_from_s();
    let mut entries = HashMap::new();
    for (i, layer) in layering.layers().iter().enumerate().skip(1) {
        for (a, &u) in layer.iter().enumerate() {
            for &v in &layer[a + 1..] {
                let w = g
                    .neighbors(u)
                    .iter()
                    .copied()
                    .find(|&w| layering.layer(w) == Some(i - 1) && g.has_edge(w, v));
                if let Some(w) = w {
                    entries.insert((u, v), w);
                }
            }
        }
    }
    LookTable { entries }
}

/// Adjacent equidistant-from-`from` pairs with no common neighbor one step
/// closer: witnesses that the triangle condition fails.
pub fn triangle_condition_violations(g: &Graph, from: usize) -> Vec<(usize, usize)> {
    let dist = g.bfs(from);
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        let (Some(du), Some(dv)) = (dist[u], dist[v]) else {
            continue;
        };
        if du != dv || du == 0 {
            continue;
        }
        let has_common = g
            .neighbors(u)
            .iter()
            .any(|&w| dist[w] == Some(du - 1) && g.has_edge(w, v));
        if !has_common {
            out.push((u, v));
        }
    }
    out
}

/// A solved instance plus the memoization statistics the quadratic bound is
/// asserted against.
#[derive(Debug, Clone)]
pub struct WmOutcome {
    pub sequence: ReconfigSequence,
    /// Distinct `(layer, u, v)` swap subproblems encountered.
    pub subproblems: usize,
}

struct MergeState<'a> {
    instance: &'a StInstance,
    look: &'a LookTable,
    current: Vec<usize>,
    steps: Vec<KStep>,
    seen: BTreeSet<(usize, usize, usize)>,
}

impl MergeState<'_> {
    /// Changes the layer-`i` vertex of the current path to `b`, first
    /// recursively steering the layer below onto a common parent. `b` must be
    /// adjacent to the current layer-`i+1` vertex.
    fn swap(&mut self, i: usize, b: usize) -> Result<()> {
        let a = self.current[i];
        debug_assert_ne!(a, b);
        debug_assert!(i >= 1);
        self.seen.insert((i, a.min(b), a.max(b)));
        let w = self
            .look
            .look(a, b)
            .ok_or(Error::TriangleConditionViolated { layer: i, u: a, v: b })?;
        if self.current[i - 1] != w {
            self.swap(i - 1, w)?;
        }
        let step = KStep {
            anchor_lo: i - 1,
            anchor_hi: i + 1,
            old_block: vec![a],
            new_block: vec![b],
        };
        self.current[i] = b;
        debug_assert!(self.instance.is_st_shortest_path(&self.current));
        self.steps.push(step);
        Ok(())
    }
}

/// Builds a single-vertex-step sequence from `p` to `q`, merging from the t
/// side down. On weakly modular graphs the needed common parents always
/// exist; a missing one is reported as a triangle-condition violation.
pub fn weakly_modular_solve(
    instance: &StInstance,
    p: &ShortestPath,
    q: &ShortestPath,
) -> Result<WmOutcome> {
    instance
        .check_st_shortest_path(p.vertices())
        .map_err(Error::InvalidPath)?;
    instance
        .check_st_shortest_path(q.vertices())
        .map_err(Error::InvalidPath)?;
    let look = build_look_table(instance);
    let mut state = MergeState {
        instance,
        look: &look,
        current: p.vertices().to_vec(),
        steps: Vec::new(),
        seen: BTreeSet::new(),
    };
    let ell = instance.st_distance();
    for i in (1..ell).rev() {
        if state.current[i] != q.vertices()[i] {
            state.swap(i, q.vertices()[i])?;
        }
    }
    debug_assert_eq!(state.current, q.vertices());
    let sequence = ReconfigSequence {
        start: p.clone(),
        steps: state.steps,
    };
    sequence.replay(instance)?;
    Ok(WmOutcome {
        sequence,
        subproblems: state.seen.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle_graph, random_interval_graph, rng_for};

    #[test]
    fn look_table_on_c4() {
        let inst = StInstance::new(cycle_graph(4), 0, 2).unwrap();
        let look = build_look_table(&inst);
        assert_eq!(look.look(1, 3), Some(0));
        assert_eq!(look.look(1, 2), None); // different layers: no entry stored
    }

    #[test]
    fn look_agrees_with_direct_intersection() {
        let mut rng = rng_for(7);
        for _ in 0..30 {
            let g = crate::generators::random_graph(8, 0.4, &mut rng);
            let Some(inst) = crate::generators::random_instance(&g, &mut rng) else {
                continue;
            };
            let layering = inst.layering_from_s();
            let look = build_look_table(&inst);
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    let (Some(du), Some(dv)) = (layering.layer(u), layering.layer(v)) else {
                        continue;
                    };
                    if du != dv || du == 0 {
                        continue;
                    }
                    let expect = g
                        .neighbors(u)
                        .iter()
                        .filter(|&&w| layering.layer(w) == Some(du - 1))
                        .find(|&&w| g.has_edge(w, v))
                        .copied();
                    assert_eq!(look.look(u, v), expect);
                }
            }
        }
    }

    #[test]
    fn c5_triangle_condition_violation() {
        // In C5 from vertex 0 the two distance-2 vertices 2 and 3 are adjacent
        // but have no common neighbor at distance 1: no such parent exists.
        let g = cycle_graph(5);
        let violations = triangle_condition_violations(&g, 0);
        assert_eq!(violations, vec![(2, 3)]);
    }

    #[test]
    fn equal_paths_solve_empty() {
        let inst = StInstance::new(cycle_graph(4), 0, 2).unwrap();
        let p = ShortestPath::new(&inst, vec![0, 1, 2]).unwrap();
        let out = weakly_modular_solve(&inst, &p, &p).unwrap();
        assert!(out.sequence.is_empty());
    }

    #[test]
    fn interval_instances_solve_and_stay_quadratic() {
        let mut rng = rng_for(11);
        let mut solved = 0;
        for _ in 0..60 {
            let g = random_interval_graph(8, &mut rng);
            let Some(inst) = crate::generators::random_instance(&g, &mut rng) else {
                continue;
            };
            let Ok(paths) = inst.enumerate_shortest_paths(50) else {
                continue;
            };
            for p in &paths {
                for q in &paths {
                    let out = weakly_modular_solve(&inst, p, q).unwrap();
                    assert!(out.subproblems <= inst.n() * inst.n());
                    let stages = out.sequence.replay(&inst).unwrap();
                    assert_eq!(stages.last().unwrap(), q);
                    solved += 1;
                }
            }
        }
        assert!(solved > 0);
    }
}
