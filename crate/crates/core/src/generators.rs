//! Deterministic graph families and seeded random instance generators used by
//! the `verify` sweeps and the test suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::classes::{ArcRep, ChordRep, PermutationRep};
use crate::graph::{Graph, StInstance};

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((0, n - 1));
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// G(n, p) with the given edge probability.
pub fn random_graph(n: usize, edge_prob: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < edge_prob {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random instance over `g`: a uniformly chosen ordered pair `(s,t)` with `t`
/// reachable from `s`, or `None` if no such pair exists.
pub fn random_instance(g: &Graph, rng: &mut ChaCha8Rng) -> Option<StInstance> {
    let n = g.n();
    let mut pairs = Vec::new();
    for s in 0..n {
        let dist = g.bfs(s);
        for (t, d) in dist.iter().enumerate() {
            if s != t && d.is_some() {
                pairs.push((s, t));
            }
        }
    }
    if pairs.is_empty() {
        return None;
    }
    let &(s, t) = &pairs[rng.random_range(0..pairs.len())];
    Some(StInstance::new(g.clone(), s, t).unwrap())
}

/// Like [`random_instance`], but preferring endpoint pairs with at least two
/// shortest paths between them, so reconfiguration questions are nontrivial.
pub fn random_multipath_instance(g: &Graph, rng: &mut ChaCha8Rng) -> Option<StInstance> {
    let n = g.n();
    let mut rich = Vec::new();
    let mut any = Vec::new();
    for s in 0..n {
        let dist = g.bfs(s);
        for t in (0..n).filter(|&t| t != s) {
            if dist[t].is_none() {
                continue;
            }
            any.push((s, t));
            let inst = StInstance::new(g.clone(), s, t).unwrap();
            if inst.count_shortest_paths() > 1u32.into() {
                rich.push((s, t));
            }
        }
    }
    let pool = if rich.is_empty() { &any } else { &rich };
    if pool.is_empty() {
        return None;
    }
    let &(s, t) = &pool[rng.random_range(0..pool.len())];
    Some(StInstance::new(g.clone(), s, t).unwrap())
}

pub fn random_permutation_rep(n: usize, rng: &mut ChaCha8Rng) -> PermutationRep {
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.shuffle(rng);
    PermutationRep::new(sigma).unwrap()
}

/// Random chord diagram: a uniform perfect matching of the 2n circle positions.
pub fn random_chord_rep(n: usize, rng: &mut ChaCha8Rng) -> ChordRep {
    let mut positions: Vec<u32> = (0..2 * n as u32).collect();
    positions.shuffle(rng);
    let ends: Vec<(u32, u32)> = positions.chunks(2).map(|c| (c[0], c[1])).collect();
    ChordRep::new(ends).unwrap()
}

/// Random circular-arc diagram with distinct endpoints on 2n positions.
pub fn random_arc_rep(n: usize, rng: &mut ChaCha8Rng) -> ArcRep {
    let mut positions: Vec<u32> = (0..2 * n as u32).collect();
    positions.shuffle(rng);
    let arcs: Vec<(u32, u32)> = positions.chunks(2).map(|c| (c[0], c[1])).collect();
    ArcRep::new(arcs, 2 * n as u32).unwrap()
}

/// Random interval graph on `n` vertices: intersection graph of n random
/// closed integer intervals.
pub fn random_interval_graph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let span = 2 * n as i64;
    let mut intervals = Vec::with_capacity(n);
    for _ in 0..n {
        let a = rng.random_range(0..span);
        let b = rng.random_range(0..span);
        intervals.push((a.min(b), a.max(b)));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let (a1, b1) = intervals[u];
            let (a2, b2) = intervals[v];
            if a1 <= b2 && a2 <= b1 {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}
