//! Ground-truth reconfiguration engine: the k-step relation, the explicit
//! reconfiguration graph over all s-t shortest paths, BFS-based shortest
//! sequences and diameters, and the two-step shortcut for large k.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{ShortestPath, ShortestPathDag, StInstance};

/// One reconfiguration step: the interior block between the two anchor
/// indices is replaced, anchors and everything outside them stay fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KStep {
    /// Index of the left anchor vertex (kept).
    pub anchor_lo: usize,
    /// Index of the right anchor vertex (kept).
    pub anchor_hi: usize,
    /// Replaced interior vertices, from `anchor_lo + 1` to `anchor_hi - 1`.
    pub old_block: Vec<usize>,
    pub new_block: Vec<usize>,
}

impl KStep {
    /// Number of contiguous vertices the step changes.
    pub fn width(&self) -> usize {
        self.old_block.len()
    }

    /// The same step run backwards.
    pub fn inverted(&self) -> KStep {
        KStep {
            anchor_lo: self.anchor_lo,
            anchor_hi: self.anchor_hi,
            old_block: self.new_block.clone(),
            new_block: self.old_block.clone(),
        }
    }

    /// Applies the step to a vertex list, checking that the old block matches.
    pub fn apply(&self, vertices: &[usize]) -> Result<Vec<usize>> {
        let lo = self.anchor_lo;
        let hi = self.anchor_hi;
        if hi >= vertices.len() || hi != lo + self.old_block.len() + 1 {
            return Err(Error::PreconditionViolated(
                "step anchors do not fit the path".into(),
            ));
        }
        if vertices[lo + 1..hi] != self.old_block[..] {
            return Err(Error::PreconditionViolated(
                "step old block does not match the path".into(),
            ));
        }
        let mut out = vertices.to_vec();
        out[lo + 1..hi].copy_from_slice(&self.new_block);
        Ok(out)
    }
}

/// A start path plus an ordered list of steps; every stage must be a valid
/// shortest path, which `replay` checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconfigSequence {
    pub start: ShortestPath,
    pub steps: Vec<KStep>,
}

impl ReconfigSequence {
    pub fn empty(start: ShortestPath) -> Self {
        ReconfigSequence {
            start,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// All stages of the sequence as raw vertex lists (start included).
    pub fn stages(&self) -> Vec<Vec<usize>> {
        let mut out = vec![self.start.vertices().to_vec()];
        for step in &self.steps {
            let next = step
                .apply(out.last().unwrap())
                .expect("stages: step does not fit");
            out.push(next);
        }
        out
    }

    /// Applies all steps, validating every intermediate stage against the
    /// instance. Returns the validated stages.
    pub fn replay(&self, instance: &StInstance) -> Result<Vec<ShortestPath>> {
        let mut current = self.start.vertices().to_vec();
        instance
            .check_st_shortest_path(&current)
            .map_err(Error::InvalidPath)?;
        let mut out = vec![ShortestPath::from_vec_unchecked(current.clone())];
        for step in &self.steps {
            current = step.apply(&current)?;
            instance
                .check_st_shortest_path(&current)
                .map_err(Error::InvalidPath)?;
            out.push(ShortestPath::from_vec_unchecked(current.clone()));
        }
        Ok(out)
    }

    pub fn final_path(&self) -> ShortestPath {
        ShortestPath::from_vec_unchecked(self.stages().pop().unwrap())
    }

    /// The sequence that undoes this one.
    pub fn reversed(&self) -> ReconfigSequence {
        let final_path = self.final_path();
        ReconfigSequence {
            start: final_path,
            steps: self.steps.iter().rev().map(KStep::inverted).collect(),
        }
    }

    /// Concatenation; `other` must start where this sequence ends.
    pub fn chain(mut self, other: ReconfigSequence) -> ReconfigSequence {
        assert_eq!(self.final_path(), other.start, "chain: stage mismatch");
        self.steps.extend(other.steps);
        self
    }

    /// Machine-readable rendering: a `steps <count> k <k>` header, then one
    /// stage per line.
    pub fn render(&self, k: usize) -> String {
        let mut out = format!("steps {} k {}\n", self.steps.len(), k);
        for stage in self.stages() {
            let line: Vec<String> = stage.iter().map(usize::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// The minimal-width step turning `p` into `q`, or `None` if `p == q`.
///
/// Two equal-length shortest paths always differ on a contiguous set of
/// interior positions once equal flanks are stripped, so this is the unique
/// minimal block description of the move.
pub fn kstep_between(p: &ShortestPath, q: &ShortestPath) -> Option<KStep> {
    let a = p.vertices();
    let b = q.vertices();
    debug_assert_eq!(a.len(), b.len());
    let first = (0..a.len()).find(|&i| a[i] != b[i])?;
    let last = (0..a.len()).rfind(|&i| a[i] != b[i]).unwrap();
    Some(KStep {
        anchor_lo: first - 1,
        anchor_hi: last + 1,
        old_block: a[first..=last].to_vec(),
        new_block: b[first..=last].to_vec(),
    })
}

fn k_step_neighbors_with_dag(
    instance: &StInstance,
    dag: &ShortestPathDag,
    path: &ShortestPath,
    k: usize,
) -> Vec<ShortestPath> {
    let verts = path.vertices();
    let ell = path.len_edges();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for lo in 0..ell {
        for hi in lo + 2..=ell.min(lo + 1 + k) {
            let blocks = dag.paths_between(verts[lo], verts[hi], hi - lo + 1);
            for block in blocks {
                if block.len() != hi - lo + 1 {
                    continue;
                }
                if block[1..block.len() - 1] == verts[lo + 1..hi] {
                    continue; // the old block itself
                }
                let mut cand = verts.to_vec();
                cand[lo + 1..hi].copy_from_slice(&block[1..block.len() - 1]);
                debug_assert!(instance.is_st_shortest_path(&cand));
                found.insert(cand);
            }
        }
    }
    found
        .into_iter()
        .map(ShortestPath::from_vec_unchecked)
        .collect()
}

/// All distinct shortest paths reachable from `path` by one k-step, in
/// lexicographic order.
pub fn k_step_neighbors(
    instance: &StInstance,
    path: &ShortestPath,
    k: usize,
) -> Result<Vec<ShortestPath>> {
    assert!(k >= 1, "k must be positive");
    instance
        .check_st_shortest_path(path.vertices())
        .map_err(Error::InvalidPath)?;
    let dag = instance.shortest_path_dag();
    Ok(k_step_neighbors_with_dag(instance, &dag, path, k))
}

/// The explicit k-SPR reconfiguration graph: one node per s-t shortest path,
/// edges given by the k-step relation.
#[derive(Debug, Clone)]
pub struct ReconfigGraph {
    paths: Vec<ShortestPath>,
    adj: Vec<Vec<usize>>,
    k: usize,
}

impl ReconfigGraph {
    pub fn build(instance: &StInstance, k: usize, path_cap: usize) -> Result<Self> {
        let paths = instance.enumerate_shortest_paths(path_cap)?;
        // Each path is a distinct vertex subset, so there are at most 2^n.
        let bound = BigUint::one() << instance.n();
        assert!(
            BigUint::from(paths.len()) <= bound,
            "path count exceeds the 2^n bound"
        );
        let index: HashMap<&[usize], usize> = paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.vertices(), i))
            .collect();
        let dag = instance.shortest_path_dag();
        let mut adj = Vec::with_capacity(paths.len());
        for p in &paths {
            let neigh = k_step_neighbors_with_dag(instance, &dag, p, k);
            let ids: Vec<usize> = neigh
                .iter()
                .map(|q| *index.get(q.vertices()).expect("neighbor enumerated"))
                .collect();
            adj.push(ids);
        }
        Ok(ReconfigGraph { paths, adj, k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[ShortestPath] {
        &self.paths
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as sorted `(i,j)` pairs with `i < j`.
    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for (i, neigh) in self.adj.iter().enumerate() {
            for &j in neigh {
                out.insert((i.min(j), i.max(j)));
            }
        }
        out
    }

    pub fn index_of(&self, path: &ShortestPath) -> Option<usize> {
        self.paths
            .binary_search_by(|p| p.vertices().cmp(path.vertices()))
            .ok()
    }

    pub fn bfs_distances(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.paths.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Connected-component id per node, components numbered by least member.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.paths.len()];
        for start in 0..self.paths.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            comp[start] = start;
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = start;
                        queue.push_back(v);
                    }
                }
            }
        }
        comp
    }
}

/// Diameter of a reconfiguration graph; `Infinite` when it is disconnected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

/// Minimum-step sequence from `p` to `q` under the k-step relation, found by
/// BFS on the explicit reconfiguration graph. `None` iff `p` and `q` lie in
/// different components.
pub fn shortest_reconfig_sequence(
    instance: &StInstance,
    p: &ShortestPath,
    q: &ShortestPath,
    k: usize,
    path_cap: usize,
) -> Result<Option<ReconfigSequence>> {
    instance
        .check_st_shortest_path(p.vertices())
        .map_err(Error::InvalidPath)?;
    instance
        .check_st_shortest_path(q.vertices())
        .map_err(Error::InvalidPath)?;
    if p == q {
        return Ok(Some(ReconfigSequence::empty(p.clone())));
    }
    let rg = ReconfigGraph::build(instance, k, path_cap)?;
    let pi = rg.index_of(p).expect("p enumerated");
    let qi = rg.index_of(q).expect("q enumerated");
    let dist = rg.bfs_distances(qi);
    if dist[pi].is_none() {
        return Ok(None);
    }
    // Walk from p picking the least-index neighbor one step closer to q;
    // with sorted adjacency this is deterministic.
    let mut steps = Vec::new();
    let mut cur = pi;
    while cur != qi {
        let d = dist[cur].unwrap();
        let next = *rg.adj[cur]
            .iter()
            .find(|&&m| dist[m] == Some(d - 1))
            .expect("BFS predecessor exists");
        steps.push(kstep_between(&rg.paths[cur], &rg.paths[next]).expect("distinct paths"));
        cur = next;
    }
    Ok(Some(ReconfigSequence {
        start: p.clone(),
        steps,
    }))
}

/// Max over all node pairs of the BFS distance; `Infinite` when disconnected.
pub fn reconfig_diameter(instance: &StInstance, k: usize, path_cap: usize) -> Result<Diameter> {
    let rg = ReconfigGraph::build(instance, k, path_cap)?;
    let mut best = 0;
    for from in 0..rg.path_count() {
        for d in rg.bfs_distances(from) {
            match d {
                Some(d) => best = best.max(d),
                None => return Ok(Diameter::Infinite),
            }
        }
    }
    Ok(Diameter::Finite(best))
}

/// Reconfigures `p` to `q` in at most two block steps, valid whenever
/// `2k >= n`.
///
/// All interior positions where the paths differ carry vertices of `q` that
/// are off `p` entirely (a shared vertex sits at the same index on both
/// paths), so at most `n - d(s,t) - 1 <= k - 1` positions differ. If the span
/// from first to last difference fits in one block, one step suffices;
/// otherwise the runs of differing positions are split at a gap chosen so
/// both sides span at most `k`.
pub fn large_k_shortcut(
    instance: &StInstance,
    p: &ShortestPath,
    q: &ShortestPath,
    k: usize,
) -> Result<ReconfigSequence> {
    if 2 * k < instance.n() {
        return Err(Error::PreconditionViolated(format!(
            "large_k_shortcut needs k >= n/2 (k={k}, n={})",
            instance.n()
        )));
    }
    instance
        .check_st_shortest_path(p.vertices())
        .map_err(Error::InvalidPath)?;
    instance
        .check_st_shortest_path(q.vertices())
        .map_err(Error::InvalidPath)?;

    let a = p.vertices();
    let b = q.vertices();
    let diffs: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
    if diffs.is_empty() {
        return Ok(ReconfigSequence::empty(p.clone()));
    }
    let first = diffs[0];
    let last = *diffs.last().unwrap();

    let step_over = |from: &[usize], lo_diff: usize, hi_diff: usize| KStep {
        anchor_lo: lo_diff - 1,
        anchor_hi: hi_diff + 1,
        old_block: from[lo_diff..=hi_diff].to_vec(),
        new_block: b[lo_diff..=hi_diff].to_vec(),
    };

    let seq = if last - first < k {
        ReconfigSequence {
            start: p.clone(),
            steps: vec![step_over(a, first, last)],
        }
    } else {
        // Split between runs of differences: take the last run ending within
        // the first k positions of the span. The remainder then spans at most
        // span - k + run_len <= k - 2 positions (since at most k - 1 positions
        // differ in total).
        let cut = diffs
            .iter()
            .zip(diffs.iter().skip(1))
            .filter(|(&d, &next)| d + 1 < next && d < first + k)
            .map(|(&d, _)| d)
            .next_back()
            .expect("a run gap exists when the span exceeds k");
        let step1 = step_over(a, first, cut);
        let mid = step1.apply(a)?;
        let next_diff = *diffs.iter().find(|&&d| d > cut).unwrap();
        let step2 = step_over(&mid, next_diff, last);
        ReconfigSequence {
            start: p.clone(),
            steps: vec![step1, step2],
        }
    };
    debug_assert!(seq.steps.iter().all(|s| s.width() <= k));
    seq.replay(instance)?;
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::cycle_graph;
    use crate::graph::Graph;

    fn sp(inst: &StInstance, v: &[usize]) -> ShortestPath {
        ShortestPath::new(inst, v.to_vec()).unwrap()
    }

    #[test]
    fn c4_single_swap() {
        let inst = StInstance::new(cycle_graph(4), 0, 2).unwrap();
        let p = sp(&inst, &[0, 1, 2]);
        let neigh = k_step_neighbors(&inst, &p, 1).unwrap();
        assert_eq!(neigh.len(), 1);
        assert_eq!(neigh[0].vertices(), &[0, 3, 2]);
    }

    #[test]
    fn c6_k1_disconnected_k2_connected() {
        let inst = StInstance::new(cycle_graph(6), 0, 3).unwrap();
        let p = sp(&inst, &[0, 1, 2, 3]);
        let q = sp(&inst, &[0, 5, 4, 3]);
        assert!(k_step_neighbors(&inst, &p, 1).unwrap().is_empty());
        let n2 = k_step_neighbors(&inst, &p, 2).unwrap();
        assert_eq!(n2, vec![q.clone()]);
        assert_eq!(
            shortest_reconfig_sequence(&inst, &p, &q, 1, 100).unwrap(),
            None
        );
        let seq = shortest_reconfig_sequence(&inst, &p, &q, 2, 100)
            .unwrap()
            .unwrap();
        assert_eq!(seq.len(), 1);
        seq.replay(&inst).unwrap();
    }

    #[test]
    fn c4_reconfig_graph_and_diameter() {
        let inst = StInstance::new(cycle_graph(4), 0, 2).unwrap();
        let rg = ReconfigGraph::build(&inst, 1, 100).unwrap();
        assert_eq!(rg.path_count(), 2);
        assert_eq!(rg.edge_count(), 1);
        assert_eq!(
            reconfig_diameter(&inst, 1, 100).unwrap(),
            Diameter::Finite(1)
        );
    }

    #[test]
    fn c6_diameter_infinite_at_k1() {
        let inst = StInstance::new(cycle_graph(6), 0, 3).unwrap();
        assert_eq!(reconfig_diameter(&inst, 1, 100).unwrap(), Diameter::Infinite);
    }

    #[test]
    fn identical_paths_empty_sequence() {
        let inst = StInstance::new(cycle_graph(4), 0, 2).unwrap();
        let p = sp(&inst, &[0, 1, 2]);
        let seq = shortest_reconfig_sequence(&inst, &p, &p, 1, 100)
            .unwrap()
            .unwrap();
        assert!(seq.is_empty());
    }

    #[test]
    fn k1_steps_form_4_cycles() {
        // Every single-vertex swap uses a 4-cycle: anchors plus old and new vertex.
        let inst = StInstance::new(cycle_graph(4), 0, 2).unwrap();
        let p = sp(&inst, &[0, 1, 2]);
        for q in k_step_neighbors(&inst, &p, 1).unwrap() {
            let step = kstep_between(&p, &q).unwrap();
            assert_eq!(step.width(), 1);
            let (lo, hi) = (step.anchor_lo, step.anchor_hi);
            let g = inst.graph();
            let a = p.vertices()[lo];
            let b = p.vertices()[hi];
            let old = step.old_block[0];
            let new = step.new_block[0];
            assert!(g.has_edge(a, old) && g.has_edge(old, b));
            assert!(g.has_edge(a, new) && g.has_edge(new, b));
            assert_ne!(old, new);
        }
    }

    #[test]
    fn shortcut_one_step_on_c4() {
        let inst = StInstance::new(cycle_graph(4), 0, 2).unwrap();
        let p = sp(&inst, &[0, 1, 2]);
        let q = sp(&inst, &[0, 3, 2]);
        let seq = large_k_shortcut(&inst, &p, &q, 2).unwrap();
        assert_eq!(seq.len(), 1);
    }

    #[test]
    fn shortcut_whole_interior_on_c6() {
        let inst = StInstance::new(cycle_graph(6), 0, 3).unwrap();
        let p = sp(&inst, &[0, 1, 2, 3]);
        let q = sp(&inst, &[0, 5, 4, 3]);
        let seq = large_k_shortcut(&inst, &p, &q, 3).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq.steps[0].width(), 2);
        seq.replay(&inst).unwrap();
    }

    #[test]
    fn shortcut_rejects_small_k() {
        let inst = StInstance::new(cycle_graph(6), 0, 3).unwrap();
        let p = sp(&inst, &[0, 1, 2, 3]);
        assert!(matches!(
            large_k_shortcut(&inst, &p, &p, 2),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn shortcut_two_steps_with_split_runs() {
        // Two C4 "bubbles" joined by a long path: differences at both ends,
        // equal vertices in between, span wider than k.
        //   0 -(1|2)- 3 - 4 - 5 - 6 -(7|8)- 9
        let mut g = Graph::new(10);
        for (u, v) in [
            (0, 1),
            (0, 2),
            (1, 3),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (6, 8),
            (7, 9),
            (8, 9),
        ] {
            g.add_edge(u, v).unwrap();
        }
        let inst = StInstance::new(g, 0, 9).unwrap();
        let p = sp(&inst, &[0, 1, 3, 4, 5, 6, 7, 9]);
        let q = sp(&inst, &[0, 2, 3, 4, 5, 6, 8, 9]);
        let k = 5; // n = 10, span = 6 > k
        let seq = large_k_shortcut(&inst, &p, &q, k).unwrap();
        assert_eq!(seq.len(), 2);
        let stages = seq.replay(&inst).unwrap();
        assert_eq!(stages.last().unwrap(), &q);
    }

    #[test]
    fn sequence_render_format() {
        let inst = StInstance::new(cycle_graph(4), 0, 2).unwrap();
        let p = sp(&inst, &[0, 1, 2]);
        let q = sp(&inst, &[0, 3, 2]);
        let seq = shortest_reconfig_sequence(&inst, &p, &q, 1, 100)
            .unwrap()
            .unwrap();
        assert_eq!(seq.render(1), "steps 1 k 1\n0 1 2\n0 3 2\n");
    }
}
