//! SPR for Boolean hypercubes. Every s-t shortest path is a permutation of
//! `ones(s XOR t)`, a single step is an adjacent transposition, and the
//! optimal sequence length is the Kendall tau distance between the two
//! permutations.

use crate::error::{Error, PathDefect, Result};
use crate::graph::{Graph, ShortestPath, StInstance};
use crate::oracle::{KStep, ReconfigSequence};

/// d-dimensional Boolean hypercube; vertex ids are the bit strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypercubeRep {
    pub d: u32,
}

impl HypercubeRep {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 || d > 20 {
            return Err(Error::InvalidRepresentation(format!(
                "hypercube dimension {d} out of supported range 1..=20"
            )));
        }
        Ok(HypercubeRep { d })
    }

    pub fn vertex_count(&self) -> usize {
        1usize << self.d
    }

    pub fn induced_graph(&self) -> Graph {
        hypercube_graph(self.d)
    }

    pub fn validate_against(&self, g: &Graph) -> Result<()> {
        if *g != self.induced_graph() {
            return Err(Error::InvalidRepresentation(
                "graph is not the hypercube of the stated dimension".into(),
            ));
        }
        Ok(())
    }
}

pub fn hypercube_graph(d: u32) -> Graph {
    let n = 1usize << d;
    let mut g = Graph::new(n);
    for v in 0..n {
        for b in 0..d {
            let w = v ^ (1 << b);
            if v < w {
                g.add_edge(v, w).unwrap();
            }
        }
    }
    g
}

/// Hypercube instance with the given endpoint bit strings.
pub fn hypercube_instance(d: u32, s: usize, t: usize) -> Result<StInstance> {
    StInstance::new(hypercube_graph(d), s, t)
}

/// Coordinate positions are named as in bit strings read left to right:
/// position 1 is the most significant of the `d` coordinates.
fn bit_of_position(d: u32, pos: u32) -> u32 {
    d - pos
}

/// The set `ones(x)` as 1-based left-to-right coordinate positions.
pub fn ones(d: u32, x: usize) -> Vec<u32> {
    (1..=d).filter(|&p| x >> bit_of_position(d, p) & 1 == 1).collect()
}

/// The permutation of coordinate positions along a path: entry `i` is the
/// coordinate flipped by the path's `i`-th edge.
pub fn path_to_permutation(d: u32, s: usize, t: usize, vertices: &[usize]) -> Result<Vec<u32>> {
    if vertices.is_empty() || vertices[0] != s || *vertices.last().unwrap() != t {
        return Err(Error::InvalidPath(PathDefect::WrongEndpoints));
    }
    let mask = s ^ t;
    let r = mask.count_ones() as usize;
    if vertices.len() != r + 1 {
        return Err(Error::InvalidPath(PathDefect::WrongLength));
    }
    let mut seen = 0usize;
    let mut perm = Vec::with_capacity(r);
    for w in vertices.windows(2) {
        let diff = w[0] ^ w[1];
        if diff.count_ones() != 1 {
            return Err(Error::InvalidPath(PathDefect::NotAdjacent));
        }
        if diff & mask == 0 || seen & diff != 0 {
            // flips a coordinate outside ones(s^t), or the same one twice
            return Err(Error::InvalidPath(PathDefect::WrongLength));
        }
        seen |= diff;
        perm.push(d - diff.trailing_zeros());
    }
    Ok(perm)
}

/// Inverse of [`path_to_permutation`].
pub fn permutation_to_path(d: u32, s: usize, perm: &[u32]) -> Vec<usize> {
    let mut out = vec![s];
    let mut cur = s;
    for &p in perm {
        cur ^= 1 << bit_of_position(d, p);
        out.push(cur);
    }
    out
}

/// Number of element pairs whose relative order differs between `p` and `q`.
pub fn kendall_tau(p: &[u32], q: &[u32]) -> Result<u64> {
    let mut ps = p.to_vec();
    let mut qs = q.to_vec();
    ps.sort_unstable();
    qs.sort_unstable();
    if ps != qs || ps.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DomainMismatch);
    }
    let pos_in_q = |x: u32| q.iter().position(|&y| y == x).unwrap();
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if pos_in_q(p[i]) > pos_in_q(p[j]) {
                inversions += 1;
            }
        }
    }
    Ok(inversions)
}

/// Reconfigures `p` into `q` by adjacent transpositions (bubble sort toward
/// `q`'s order), which is optimal: the step count equals the Kendall tau
/// distance of the two permutations.
pub fn hypercube_solve(
    rep: &HypercubeRep,
    s: usize,
    t: usize,
    p: &ShortestPath,
    q: &ShortestPath,
) -> Result<ReconfigSequence> {
    let n = rep.vertex_count();
    if s >= n || t >= n || s == t {
        return Err(Error::PreconditionViolated(format!(
            "endpoints s={s}, t={t} invalid for a {}-cube",
            rep.d
        )));
    }
    let mut perm = path_to_permutation(rep.d, s, t, p.vertices())?;
    let target = path_to_permutation(rep.d, s, t, q.vertices())?;
    let rank: std::collections::HashMap<u32, usize> = target
        .iter()
        .enumerate()
        .map(|(i, &b)| (b, i))
        .collect();

    let mut vertices = p.vertices().to_vec();
    let mut steps = Vec::new();
    while let Some(j) =
        (0..perm.len().saturating_sub(1)).find(|&j| rank[&perm[j]] > rank[&perm[j + 1]])
    {
        perm.swap(j, j + 1);
        // Swapping edges j and j+1 moves the vertex between them.
        let new_vertex = vertices[j] ^ (1usize << bit_of_position(rep.d, perm[j]));
        let step = KStep {
            anchor_lo: j,
            anchor_hi: j + 2,
            old_block: vec![vertices[j + 1]],
            new_block: vec![new_vertex],
        };
        vertices[j + 1] = new_vertex;
        steps.push(step);
    }
    debug_assert_eq!(perm, target);
    debug_assert_eq!(vertices, q.vertices());
    Ok(ReconfigSequence {
        start: p.clone(),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_example_from_bit_strings() {
        // s = 00101, t = 10011: positions counted from the left, 1-based
        let s = 0b00101usize;
        let t = 0b10011usize;
        assert_eq!(ones(5, s ^ t), vec![1, 3, 4]);
        let inst = hypercube_instance(5, s, t).unwrap();
        assert_eq!(inst.count_shortest_paths(), 6u32.into());
    }

    #[test]
    fn d3_has_six_paths() {
        let inst = hypercube_instance(3, 0, 7).unwrap();
        assert_eq!(inst.enumerate_shortest_paths(100).unwrap().len(), 6);
    }

    #[test]
    fn kendall_tau_examples() {
        assert_eq!(kendall_tau(&[1, 3, 4], &[1, 3, 4]).unwrap(), 0);
        assert_eq!(kendall_tau(&[1, 3, 4], &[4, 3, 1]).unwrap(), 3);
        // full reversal of r elements inverts every pair
        let r = 5;
        let fwd: Vec<u32> = (0..r).collect();
        let rev: Vec<u32> = (0..r).rev().collect();
        assert_eq!(kendall_tau(&fwd, &rev).unwrap(), (r * (r - 1) / 2) as u64);
        assert!(matches!(
            kendall_tau(&[0, 1], &[0, 2]),
            Err(Error::DomainMismatch)
        ));
    }

    #[test]
    fn solve_matches_kendall_tau() {
        let inst = hypercube_instance(3, 0, 7).unwrap();
        let paths = inst.enumerate_shortest_paths(100).unwrap();
        let rep = HypercubeRep::new(3).unwrap();
        for p in &paths {
            for q in &paths {
                let seq = hypercube_solve(&rep, 0, 7, p, q).unwrap();
                let pp = path_to_permutation(3, 0, 7, p.vertices()).unwrap();
                let qq = path_to_permutation(3, 0, 7, q.vertices()).unwrap();
                assert_eq!(seq.len() as u64, kendall_tau(&pp, &qq).unwrap());
                let stages = seq.replay(&inst).unwrap();
                assert_eq!(stages.last().unwrap(), q);
            }
        }
    }

    #[test]
    fn perm_path_round_trip() {
        let verts = permutation_to_path(5, 0b00101, &[1, 3, 4]);
        assert_eq!(*verts.last().unwrap(), 0b10011);
        let perm = path_to_permutation(5, 0b00101, 0b10011, &verts).unwrap();
        assert_eq!(perm, vec![1, 3, 4]);
    }

    #[test]
    fn rejects_non_shortest_path() {
        // revisits a coordinate
        let verts = vec![0b000, 0b001, 0b000, 0b100];
        assert!(path_to_permutation(3, 0, 4, &verts).is_err());
    }
}
