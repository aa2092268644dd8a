//! Instance transformers: labeled line graphs, the k-SPR line-graph
//! construction with its path correspondence, graph powers, uniform and
//! even-odd subdivisions, and the gadget-chain family.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, ShortestPath, StInstance};

/// Line graph with each vertex labeled by its source edge.
#[derive(Debug, Clone)]
pub struct LabeledLineGraph {
    pub graph: Graph,
    /// `origin[i]` is the edge of the source graph behind line-vertex `i`.
    pub origin: Vec<(usize, usize)>,
}

/// One vertex per edge, adjacency iff the source edges share an endpoint.
pub fn line_graph(g: &Graph) -> Result<LabeledLineGraph> {
    let origin = g.edges();
    if origin.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let m = origin.len();
    let mut lg = Graph::new(m);
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = origin[i];
            let (c, d) = origin[j];
            if a == c || a == d || b == c || b == d {
                lg.add_edge(i, j).unwrap();
            }
        }
    }
    Ok(LabeledLineGraph { graph: lg, origin })
}

/// The k-SPR line-graph instance built from an SPR instance: even-odd edges
/// are stretched into paths on k vertices, fresh endpoints are attached
/// outside s and t, and the line graph of the result is taken. A one-vertex
/// step on the source side corresponds to a k-vertex step on the target side.
#[derive(Debug, Clone)]
pub struct LineReduction {
    pub instance: StInstance,
    pub k: usize,
    /// line-vertex id per edge (lexicographic pair) of the stretched graph
    edge_index: HashMap<(usize, usize), usize>,
    /// interior vertices of each stretched edge, keyed by the source edge
    /// oriented from its even layer toward its odd layer
    expansion: HashMap<(usize, usize), Vec<usize>>,
}

impl LineReduction {
    /// Maps an s-t shortest path of the source instance to the corresponding
    /// s'-t' shortest path of the reduced instance.
    pub fn map_path(&self, src: &StInstance, path: &ShortestPath) -> Result<ShortestPath> {
        src.check_st_shortest_path(path.vertices())
            .map_err(Error::InvalidPath)?;
        let line_id = |a: usize, b: usize| self.edge_index[&(a.min(b), a.max(b))];
        let mut out = Vec::new();
        let verts = path.vertices();
        let s_star = self.star_ids(src).0;
        let t_star = self.star_ids(src).1;
        out.push(line_id(src.s(), s_star));
        for w in verts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if let Some(interior) = self.expansion.get(&(a, b)) {
                let mut chain = vec![a];
                chain.extend(interior.iter().copied());
                chain.push(b);
                for e in chain.windows(2) {
                    out.push(line_id(e[0], e[1]));
                }
            } else {
                out.push(line_id(a, b));
            }
        }
        out.push(line_id(src.t(), t_star));
        ShortestPath::new(&self.instance, out)
    }

    fn star_ids(&self, src: &StInstance) -> (usize, usize) {
        let fresh: usize = src.n()
            + self
                .expansion
                .values()
                .map(Vec::len)
                .sum::<usize>();
        (fresh, fresh + 1)
    }
}

/// Builds the reduced instance and maps the two given shortest paths.
pub fn kspr_line_instance(
    src: &StInstance,
    p: &ShortestPath,
    q: &ShortestPath,
    k: usize,
) -> Result<(LineReduction, ShortestPath, ShortestPath)> {
    if k < 2 {
        return Err(Error::PreconditionViolated("line reduction needs k >= 2".into()));
    }
    src.check_st_shortest_path(p.vertices())
        .map_err(Error::InvalidPath)?;
    src.check_st_shortest_path(q.vertices())
        .map_err(Error::InvalidPath)?;

    let stretched = even_odd_subdivide_with_map(src, k);
    let mut edges = stretched.graph.edges();
    // attach the fresh endpoints s* and t*
    let s_star = stretched.graph.n();
    let t_star = s_star + 1;
    edges.push((src.s(), s_star));
    edges.push((src.t(), t_star));
    let starred = Graph::from_edges(t_star + 1, &edges)?;

    let lg = line_graph(&starred)?;
    let edge_index: HashMap<(usize, usize), usize> = lg
        .origin
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();
    let s_prime = edge_index[&(src.s().min(s_star), src.s().max(s_star))];
    let t_prime = edge_index[&(src.t().min(t_star), src.t().max(t_star))];
    let instance = StInstance::new(lg.graph, s_prime, t_prime)?;
    let reduction = LineReduction {
        instance,
        k,
        edge_index,
        expansion: stretched.expansion,
    };
    let p_mapped = reduction.map_path(src, p)?;
    let q_mapped = reduction.map_path(src, q)?;
    Ok((reduction, p_mapped, q_mapped))
}

struct Stretched {
    graph: Graph,
    /// interior ids per stretched edge, keyed (even-layer endpoint, other)
    expansion: HashMap<(usize, usize), Vec<usize>>,
}

fn even_odd_subdivide_with_map(instance: &StInstance, k: usize) -> Stretched {
    let layering = instance.layering_from_s();
    let g = instance.graph();
    let mut keep: Vec<(usize, usize)> = Vec::new();
    let mut stretch: Vec<(usize, usize)> = Vec::new(); // oriented even -> odd
    for (u, v) in g.edges() {
        match (layering.layer(u), layering.layer(v)) {
            (Some(du), Some(dv)) if du.abs_diff(dv) == 1 => {
                let (even, odd) = if du < dv { (u, v) } else { (v, u) };
                if layering.layer(even).unwrap().is_multiple_of(2) {
                    stretch.push((even, odd));
                } else {
                    keep.push((u, v));
                }
            }
            _ => keep.push((u, v)),
        }
    }
    let mut edges = keep;
    let mut expansion = HashMap::new();
    let mut next_id = g.n();
    for (even, odd) in stretch {
        // replace the edge by a path on k vertices: k - 2 fresh interior ids
        let interior: Vec<usize> = (0..k - 2).map(|i| next_id + i).collect();
        next_id += k - 2;
        let mut chain = vec![even];
        chain.extend(interior.iter().copied());
        chain.push(odd);
        for w in chain.windows(2) {
            edges.push((w[0].min(w[1]), w[0].max(w[1])));
        }
        expansion.insert((even, odd), interior);
    }
    Stretched {
        graph: Graph::from_edges(next_id, &edges).expect("stretched graph is simple"),
        expansion,
    }
}

/// Step (i) of the line-graph construction on its own: only edges from an
/// even layer to the next layer are stretched; `k = 2` changes nothing.
pub fn even_odd_subdivide(instance: &StInstance, k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::PreconditionViolated("even-odd subdivision needs k >= 2".into()));
    }
    Ok(even_odd_subdivide_with_map(instance, k).graph)
}

/// The k-th power: all vertex pairs at distance <= k become adjacent.
pub fn graph_power(g: &Graph, k: usize) -> Graph {
    assert!(k >= 1);
    let mut out = Graph::new(g.n());
    for u in 0..g.n() {
        let dist = g.bfs(u);
        for (v, d) in dist.iter().enumerate().skip(u + 1) {
            if matches!(d, Some(d) if *d <= k) {
                out.add_edge(u, v).unwrap();
            }
        }
    }
    out
}

/// Shortest path of `G` mapped into `G^k`: every k-th vertex plus `t`, with
/// the remainder hop at the end.
pub fn power_map_path(src: &StInstance, path: &ShortestPath, k: usize) -> Vec<usize> {
    debug_assert!(src.is_st_shortest_path(path.vertices()));
    let verts = path.vertices();
    let mut out: Vec<usize> = verts.iter().copied().step_by(k).collect();
    if !(verts.len() - 1).is_multiple_of(k) {
        out.push(*verts.last().unwrap());
    }
    out
}

/// Each edge replaced by a path with `l` fresh interior vertices; original
/// ids are preserved and fresh ids appended in edge order.
pub fn subdivide_uniform(g: &Graph, l: usize) -> Graph {
    if l == 0 {
        return g.clone();
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut next_id = g.n();
    for (u, v) in g.edges() {
        let mut chain = vec![u];
        chain.extend(next_id..next_id + l);
        next_id += l;
        chain.push(v);
        for w in chain.windows(2) {
            edges.push((w[0], w[1]));
        }
    }
    Graph::from_edges(next_id, &edges).expect("subdivision is simple")
}

/// Chain of `g` complete-bipartite (2 x l) gadgets in series: n = 1+g(l+1),
/// d(s,t) = 2g, and exactly l^g shortest s-t paths.
pub fn gadget_chain(g: usize, l: usize) -> StInstance {
    assert!(g >= 1 && l >= 1);
    let n = 1 + g * (l + 1);
    let mut edges = Vec::new();
    for j in 0..g {
        let start = j * (l + 1);
        let end = (j + 1) * (l + 1);
        for m in 1..=l {
            let mid = start + m;
            edges.push((start, mid));
            edges.push((mid, end));
        }
    }
    let graph = Graph::from_edges(n, &edges).expect("gadget chain is simple");
    StInstance::new(graph, 0, g * (l + 1)).expect("t is reachable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, cycle_graph, path_graph};
    use num_bigint::BigUint;

    #[test]
    fn line_graph_of_path_is_edge() {
        let lg = line_graph(&path_graph(3)).unwrap();
        assert_eq!(lg.graph.n(), 2);
        assert_eq!(lg.graph.edge_count(), 1);
    }

    #[test]
    fn line_graph_of_triangle_is_triangle() {
        let lg = line_graph(&complete_graph(3)).unwrap();
        assert_eq!(lg.graph.n(), 3);
        assert_eq!(lg.graph.edge_count(), 3);
    }

    #[test]
    fn line_graph_of_claw_is_triangle() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let lg = line_graph(&g).unwrap();
        assert_eq!(lg.graph.n(), 3);
        assert_eq!(lg.graph.edge_count(), 3);
    }

    #[test]
    fn line_graph_counts() {
        let g = cycle_graph(5);
        let lg = line_graph(&g).unwrap();
        assert_eq!(lg.graph.n(), g.edge_count());
        let expected: usize = (0..g.n()).map(|v| g.degree(v) * (g.degree(v) - 1) / 2).sum();
        assert_eq!(lg.graph.edge_count(), expected);
    }

    #[test]
    fn empty_graph_rejected() {
        assert!(matches!(line_graph(&Graph::new(3)), Err(Error::EmptyGraph)));
    }

    #[test]
    fn even_odd_k2_is_identity() {
        let inst = StInstance::new(cycle_graph(4), 0, 2).unwrap();
        let out = even_odd_subdivide(&inst, 2).unwrap();
        assert_eq!(&out, inst.graph());
    }

    #[test]
    fn even_odd_k3_stretches_s_side_of_c4() {
        let inst = StInstance::new(cycle_graph(4), 0, 2).unwrap();
        let out = even_odd_subdivide(&inst, 3).unwrap();
        // layers: 0 | 1,3 | 2. Edges (0,1) and (0,3) are even-odd, (1,2) and
        // (2,3) are odd-even; two stretched edges each gain one vertex.
        assert_eq!(out.n(), 6);
        assert_eq!(out.edge_count(), 6);
        assert!(!out.has_edge(0, 1) && !out.has_edge(0, 3));
        assert!(out.has_edge(1, 2) && out.has_edge(2, 3));
    }

    #[test]
    fn power_one_is_identity() {
        let g = cycle_graph(6);
        assert_eq!(graph_power(&g, 1), g);
    }

    #[test]
    fn c6_squared_degrees() {
        let g2 = graph_power(&cycle_graph(6), 2);
        for v in 0..6 {
            assert_eq!(g2.degree(v), 4);
        }
    }

    #[test]
    fn subdivide_zero_is_identity() {
        let g = cycle_graph(5);
        assert_eq!(subdivide_uniform(&g, 0), g);
    }

    #[test]
    fn subdivide_single_edge() {
        let g = path_graph(2);
        let out = subdivide_uniform(&g, 2);
        assert_eq!(out.n(), 4);
        assert_eq!(out.edge_count(), 3);
        assert_eq!(out.bfs(0)[1], Some(3));
    }

    #[test]
    fn subdivision_scales_distances() {
        let mut rng = crate::generators::rng_for(2);
        for _ in 0..20 {
            let g = crate::generators::random_graph(7, 0.4, &mut rng);
            for l in 0..3usize {
                let out = subdivide_uniform(&g, l);
                let factor = l + 1;
                for u in 0..g.n() {
                    let before = g.bfs(u);
                    let after = out.bfs(u);
                    for v in 0..g.n() {
                        assert_eq!(before[v].map(|d| d * factor), after[v]);
                    }
                }
            }
        }
    }

    #[test]
    fn gadget_chain_formulas() {
        let inst = gadget_chain(2, 3);
        assert_eq!(inst.n(), 9);
        assert_eq!(inst.st_distance(), 4);
        assert_eq!(inst.count_shortest_paths(), BigUint::from(9u32));
        assert_eq!(inst.enumerate_shortest_paths(100).unwrap().len(), 9);

        let tiny = gadget_chain(1, 1);
        assert_eq!(tiny.n(), 3);
        assert_eq!(tiny.count_shortest_paths(), BigUint::from(1u32));

        let wide = gadget_chain(3, 2);
        assert_eq!(wide.n(), 10);
        assert_eq!(wide.count_shortest_paths(), BigUint::from(8u32));
    }

    #[test]
    fn gadget_chain_cap_exceeded() {
        let inst = gadget_chain(4, 4);
        assert!(matches!(
            inst.enumerate_shortest_paths(100),
            Err(Error::CapExceeded { cap: 100 })
        ));
    }

    #[test]
    fn line_reduction_maps_paths_to_valid_paths() {
        let inst = StInstance::new(cycle_graph(4), 0, 2).unwrap();
        let paths = inst.enumerate_shortest_paths(10).unwrap();
        for k in 2..=5 {
            let (red, p2, q2) =
                kspr_line_instance(&inst, &paths[0], &paths[1], k).unwrap();
            assert!(red.instance.is_st_shortest_path(p2.vertices()));
            assert!(red.instance.is_st_shortest_path(q2.vertices()));
        }
    }

    #[test]
    fn one_vertex_difference_becomes_k_vertices() {
        // Fig.-style check: source paths differing in one vertex map to
        // target paths differing in exactly k vertices.
        let inst = StInstance::new(cycle_graph(4), 0, 2).unwrap();
        let paths = inst.enumerate_shortest_paths(10).unwrap();
        for k in [2usize, 3, 5] {
            let (_, p2, q2) = kspr_line_instance(&inst, &paths[0], &paths[1], k).unwrap();
            let diffs = p2
                .vertices()
                .iter()
                .zip(q2.vertices())
                .filter(|(a, b)| a != b)
                .count();
            assert_eq!(diffs, k);
        }
    }

    #[test]
    fn subdivision_raises_the_switch_threshold() {
        // A 1-switch instance subdivided l times admits no k'-switch for
        // k' < 2l+1, while the original swap survives as a (2l+1)-switch.
        for l in 1..=2usize {
            let k = 2 * l + 1;
            let base = StInstance::new(cycle_graph(4), 0, 2).unwrap();
            let sub = subdivide_uniform(base.graph(), l);
            let inst = StInstance::new(sub, 0, 2).unwrap();
            let paths = inst.enumerate_shortest_paths(100).unwrap();
            assert_eq!(paths.len(), 2);
            for kp in 1..k {
                let n = crate::oracle::k_step_neighbors(&inst, &paths[0], kp).unwrap();
                assert!(n.is_empty(), "no {kp}-switch may exist after subdividing {l} times");
            }
            let n = crate::oracle::k_step_neighbors(&inst, &paths[0], k).unwrap();
            assert_eq!(n, vec![paths[1].clone()]);
        }
    }

    #[test]
    fn power_map_keeps_every_kth_vertex() {
        let inst = StInstance::new(cycle_graph(10), 0, 5).unwrap();
        let path = inst.enumerate_shortest_paths(10).unwrap()[0].clone();
        let mapped = power_map_path(&inst, &path, 2);
        assert_eq!(mapped.len(), 4); // ceil(5/2) hops
        let g2 = graph_power(inst.graph(), 2);
        let inst2 = StInstance::new(g2, 0, 5).unwrap();
        assert!(inst2.is_st_shortest_path(&mapped));
    }
}
