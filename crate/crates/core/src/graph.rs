//! Graph storage, BFS layering, and shortest-path queries: validity checks,
//! pruning to the shortest-path DAG, exact counting, and capped enumeration.

use std::collections::BTreeSet;
use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, PathDefect, Result};

/// Undirected simple graph on dense vertex ids `0..n`.
///
/// Neighbor lists are kept sorted, so iteration order (and everything
/// derived from it) is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::Parse {
                line: 0,
                msg: format!("edge ({u},{v}) out of range for n={n}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line: 0,
                msg: format!("self-loop at vertex {u}"),
            });
        }
        if self.has_edge(u, v) {
            return Err(Error::Parse {
                line: 0,
                msg: format!("duplicate edge ({u},{v})"),
            });
        }
        let iu = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(iu, v);
        let iv = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(iv, u);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// All edges as `(u,v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Distance from `source` to every vertex; `None` for unreachable ones.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        assert!(source < self.n(), "bfs source out of range");
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
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

    /// The exact set `{w : d(u,w) + d(w,v) = d(u,v)}`.
    pub fn interval(&self, u: usize, v: usize) -> Result<BTreeSet<usize>> {
        let du = self.bfs(u);
        let dv = self.bfs(v);
        let d = du[v].ok_or(Error::DisconnectedPair { u, v })?;
        Ok((0..self.n())
            .filter(|&w| match (du[w], dv[w]) {
                (Some(a), Some(b)) => a + b == d,
                _ => false,
            })
            .collect())
    }
}

/// Per-vertex distance from a fixed source; unreachable vertices are absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsLayering {
    source: usize,
    layer: Vec<Option<usize>>,
}

impl BfsLayering {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn layer(&self, v: usize) -> Option<usize> {
        self.layer[v]
    }

    /// Largest populated layer index.
    pub fn max_layer(&self) -> usize {
        self.layer.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Vertices grouped by layer, each group sorted by id.
    pub fn layers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.max_layer() + 1];
        for (v, l) in self.layer.iter().enumerate() {
            if let Some(l) = l {
                out[*l].push(v);
            }
        }
        out
    }
}

/// An s-t shortest path, stored as its ordered vertex list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShortestPath {
    vertices: Vec<usize>,
}

impl ShortestPath {
    /// Validates `vertices` against `instance` before wrapping it.
    pub fn new(instance: &StInstance, vertices: Vec<usize>) -> Result<Self> {
        instance
            .check_st_shortest_path(&vertices)
            .map_err(Error::InvalidPath)?;
        Ok(ShortestPath { vertices })
    }

    pub(crate) fn from_vec_unchecked(vertices: Vec<usize>) -> Self {
        ShortestPath { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges, i.e. `d(s,t)`.
    pub fn len_edges(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// A graph with designated source and target; the unit every solver works on.
///
/// Layerings from both endpoints are computed once at construction and the
/// whole value is immutable afterwards.
#[derive(Debug, Clone)]
pub struct StInstance {
    graph: Graph,
    s: usize,
    t: usize,
    from_s: BfsLayering,
    from_t: BfsLayering,
}

impl StInstance {
    /// Builds an instance, rejecting out-of-range endpoints, `s == t`, and a
    /// target unreachable from the source.
    pub fn new(graph: Graph, s: usize, t: usize) -> Result<Self> {
        let n = graph.n();
        if s >= n || t >= n {
            return Err(Error::Parse {
                line: 0,
                msg: format!("s={s} or t={t} out of range for n={n}"),
            });
        }
        if s == t {
            return Err(Error::Parse {
                line: 0,
                msg: "s and t must differ".into(),
            });
        }
        let from_s = BfsLayering {
            source: s,
            layer: graph.bfs(s),
        };
        if from_s.layer(t).is_none() {
            return Err(Error::Parse {
                line: 0,
                msg: format!("t={t} is unreachable from s={s}"),
            });
        }
        let from_t = BfsLayering {
            source: t,
            layer: graph.bfs(t),
        };
        Ok(StInstance {
            graph,
            s,
            t,
            from_s,
            from_t,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// `d(s,t)`.
    pub fn st_distance(&self) -> usize {
        self.from_s.layer(self.t).unwrap()
    }

    pub fn layering_from_s(&self) -> &BfsLayering {
        &self.from_s
    }

    pub fn layering_from_t(&self) -> &BfsLayering {
        &self.from_t
    }

    /// BFS layering from an arbitrary source vertex.
    pub fn bfs_layering(&self, source: usize) -> BfsLayering {
        BfsLayering {
            source,
            layer: self.graph.bfs(source),
        }
    }

    /// Checks every `ShortestPath` invariant, reporting the first defect.
    pub fn check_st_shortest_path(&self, vertices: &[usize]) -> std::result::Result<(), PathDefect> {
        if vertices.is_empty() {
            return Err(PathDefect::Empty);
        }
        if vertices.iter().any(|&v| v >= self.n()) {
            return Err(PathDefect::VertexOutOfRange);
        }
        if vertices[0] != self.s || *vertices.last().unwrap() != self.t {
            return Err(PathDefect::WrongEndpoints);
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(PathDefect::RepeatedVertex);
        }
        for w in vertices.windows(2) {
            if !self.graph.has_edge(w[0], w[1]) {
                return Err(PathDefect::NotAdjacent);
            }
        }
        if vertices.len() - 1 != self.st_distance() {
            return Err(PathDefect::WrongLength);
        }
        Ok(())
    }

    pub fn is_st_shortest_path(&self, vertices: &[usize]) -> bool {
        self.check_st_shortest_path(vertices).is_ok()
    }

    /// True iff the directed edge `u -> v` lies on some s-t shortest path.
    pub fn edge_on_shortest_path(&self, u: usize, v: usize) -> bool {
        match (self.from_s.layer(u), self.from_t.layer(v)) {
            (Some(du), Some(dv)) => du + 1 + dv == self.st_distance(),
            _ => false,
        }
    }

    /// Forward adjacency of the shortest-path DAG, oriented from `s` to `t`.
    pub fn shortest_path_dag(&self) -> ShortestPathDag {
        let mut fwd = vec![Vec::new(); self.n()];
        for (u, out) in fwd.iter_mut().enumerate() {
            for &v in self.graph.neighbors(u) {
                if self.edge_on_shortest_path(u, v) {
                    out.push(v);
                }
            }
        }
        ShortestPathDag { fwd }
    }

    /// The subgraph of edges lying on at least one s-t shortest path.
    ///
    /// The result has no intra-layer edges, so it is bipartite by layer parity.
    pub fn prune_to_shortest_dag(&self) -> Graph {
        let dag = self.shortest_path_dag();
        let mut g = Graph::new(self.n());
        for u in 0..self.n() {
            for &v in &dag.fwd[u] {
                // forward edges are unique per unordered pair: layers differ
                g.add_edge(u, v).expect("DAG edges are simple");
            }
        }
        g
    }

    /// Exact number of s-t shortest paths, by dynamic programming over the
    /// shortest-path DAG.
    pub fn count_shortest_paths(&self) -> BigUint {
        let dag = self.shortest_path_dag();
        let mut by_layer: Vec<Vec<usize>> = vec![Vec::new(); self.st_distance() + 1];
        for v in 0..self.n() {
            if let (Some(ds), Some(dt)) = (self.from_s.layer(v), self.from_t.layer(v)) {
                if ds + dt == self.st_distance() {
                    by_layer[ds].push(v);
                }
            }
        }
        let mut count = vec![BigUint::zero(); self.n()];
        count[self.s] = BigUint::one();
        for layer in &by_layer {
            for &u in layer {
                let cu = count[u].clone();
                if cu.is_zero() {
                    continue;
                }
                for &v in &dag.fwd[u] {
                    count[v] += &cu;
                }
            }
        }
        count[self.t].clone()
    }

    /// All s-t shortest paths in lexicographic order by vertex sequence.
    ///
    /// Fails with [`Error::CapExceeded`] as soon as more than `cap` paths exist.
    pub fn enumerate_shortest_paths(&self, cap: usize) -> Result<Vec<ShortestPath>> {
        assert!(cap > 0, "cap must be positive");
        let dag = self.shortest_path_dag();
        let mut paths = Vec::new();
        let mut stack = vec![self.s];
        self.enumerate_rec(&dag, &mut stack, &mut paths, cap)?;
        Ok(paths)
    }

    fn enumerate_rec(
        &self,
        dag: &ShortestPathDag,
        stack: &mut Vec<usize>,
        paths: &mut Vec<ShortestPath>,
        cap: usize,
    ) -> Result<()> {
        let u = *stack.last().unwrap();
        if u == self.t {
            if paths.len() == cap {
                return Err(Error::CapExceeded { cap });
            }
            paths.push(ShortestPath::from_vec_unchecked(stack.clone()));
            return Ok(());
        }
        for &v in &dag.fwd[u] {
            stack.push(v);
            self.enumerate_rec(dag, stack, paths, cap)?;
            stack.pop();
        }
        Ok(())
    }
}

/// Forward adjacency lists of the shortest-path DAG (edges oriented s -> t).
#[derive(Debug, Clone)]
pub struct ShortestPathDag {
    fwd: Vec<Vec<usize>>,
}

impl ShortestPathDag {
    pub fn successors(&self, u: usize) -> &[usize] {
        &self.fwd[u]
    }

    /// Predecessors of `v` in the DAG, i.e. `u` with a forward edge `u -> v`.
    pub fn predecessors(&self, v: usize) -> Vec<usize> {
        self.fwd
            .iter()
            .enumerate()
            .filter(|(_, succ)| succ.binary_search(&v).is_ok())
            .map(|(u, _)| u)
            .collect()
    }

    /// All DAG paths from `from` to `to`, returned as full vertex sequences in
    /// lexicographic order. Used for block replacement between two anchors.
    pub fn paths_between(&self, from: usize, to: usize, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![from];
        self.paths_between_rec(to, max_len, &mut stack, &mut out);
        out
    }

    fn paths_between_rec(
        &self,
        to: usize,
        max_len: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let u = *stack.last().unwrap();
        if u == to {
            out.push(stack.clone());
            return;
        }
        if stack.len() > max_len {
            return;
        }
        for &v in &self.fwd[u] {
            stack.push(v);
            self.paths_between_rec(to, max_len, stack, out);
            stack.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle_graph, path_graph};

    fn c4_instance() -> StInstance {
        StInstance::new(cycle_graph(4), 0, 2).unwrap()
    }

    #[test]
    fn bfs_layering_on_path() {
        let inst = StInstance::new(path_graph(3), 0, 2).unwrap();
        let l = inst.bfs_layering(0);
        assert_eq!(l.layer(0), Some(0));
        assert_eq!(l.layer(1), Some(1));
        assert_eq!(l.layer(2), Some(2));
    }

    #[test]
    fn bfs_layer_sizes_on_c4() {
        let inst = c4_instance();
        let sizes: Vec<usize> = inst.bfs_layering(0).layers().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 1]);
    }

    #[test]
    fn isolated_vertex_absent_from_layering() {
        let mut g = Graph::new(4);
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        let inst = StInstance::new(g, 0, 2).unwrap();
        assert_eq!(inst.bfs_layering(0).layer(3), None);
    }

    #[test]
    fn path_validation_on_c4() {
        let inst = c4_instance();
        assert!(inst.is_st_shortest_path(&[0, 1, 2]));
        assert!(inst.is_st_shortest_path(&[0, 3, 2]));
        assert_eq!(
            inst.check_st_shortest_path(&[0, 1, 0, 1, 2]),
            Err(PathDefect::RepeatedVertex)
        );
        assert_eq!(
            inst.check_st_shortest_path(&[0, 1]),
            Err(PathDefect::WrongEndpoints)
        );
    }

    #[test]
    fn detour_is_rejected_as_too_long() {
        // C6 from 0 to 2: the 4-edge way around is a valid walk but not shortest.
        let inst = StInstance::new(cycle_graph(6), 0, 2).unwrap();
        assert_eq!(
            inst.check_st_shortest_path(&[0, 5, 4, 3, 2]),
            Err(PathDefect::WrongLength)
        );
    }

    #[test]
    fn prune_keeps_all_c4_edges() {
        let inst = c4_instance();
        assert_eq!(inst.prune_to_shortest_dag().edge_count(), 4);
    }

    #[test]
    fn prune_drops_triangle_detour() {
        // Triangle {s=0, a=1, t=2} with the direct edge present: only (s,t) stays.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = StInstance::new(g, 0, 2).unwrap();
        let pruned = inst.prune_to_shortest_dag();
        assert_eq!(pruned.edges(), vec![(0, 2)]);
        // Cross-check: the set of shortest paths is unchanged by pruning.
        let before = inst.enumerate_shortest_paths(100).unwrap();
        let after = StInstance::new(pruned, 0, 2)
            .unwrap()
            .enumerate_shortest_paths(100)
            .unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn count_single_edge() {
        let inst = StInstance::new(path_graph(2), 0, 1).unwrap();
        assert_eq!(inst.count_shortest_paths(), BigUint::from(1u32));
    }

    #[test]
    fn enumerate_c4_lexicographic() {
        let inst = c4_instance();
        let paths = inst.enumerate_shortest_paths(10).unwrap();
        let got: Vec<&[usize]> = paths.iter().map(|p| p.vertices()).collect();
        assert_eq!(got, vec![&[0, 1, 2][..], &[0, 3, 2][..]]);
    }

    #[test]
    fn enumerate_cap_exceeded() {
        let inst = c4_instance();
        match inst.enumerate_shortest_paths(1) {
            Err(Error::CapExceeded { cap: 1 }) => {}
            other => panic!("expected CapExceeded, got {other:?}"),
        }
    }

    #[test]
    fn interval_examples() {
        let g = cycle_graph(4);
        assert_eq!(g.interval(1, 1).unwrap(), BTreeSet::from([1]));
        assert_eq!(g.interval(0, 2).unwrap(), BTreeSet::from([0, 1, 2, 3]));
        let p = path_graph(5);
        assert_eq!(p.interval(0, 4).unwrap().len(), 5);
    }

    #[test]
    fn interval_disconnected() {
        let mut g = Graph::new(3);
        g.add_edge(0, 1).unwrap();
        assert!(matches!(
            g.interval(0, 2),
            Err(Error::DisconnectedPair { u: 0, v: 2 })
        ));
    }

    #[test]
    fn unreachable_target_rejected_at_load() {
        let mut g = Graph::new(3);
        g.add_edge(0, 1).unwrap();
        assert!(StInstance::new(g, 0, 2).is_err());
    }
}
