//! SPR for circle graphs: chords are oriented layer by layer, labelled by
//! which side of the equator their endpoints fall on, and two shortest paths
//! are reconfigurable iff their labels agree.

use std::collections::HashMap;

use crate::classes::{bounded_diameter_solve, BoundedParams, SolveOutcome};
use crate::error::{Error, Result};
use crate::graph::{Graph, ShortestPath, StInstance};
use crate::oracle::{shortest_reconfig_sequence, KStep, ReconfigSequence};

/// Chord diagram: one chord per vertex, endpoints among the 2n distinct
/// circle positions `0..2n`. Vertices are adjacent iff their chords cross.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordRep {
    ends: Vec<(u32, u32)>,
}

/// Chords `(a1,a2)` and `(b1,b2)` cross iff exactly one endpoint of one lies
/// between the endpoints of the other.
fn chords_cross(a: (u32, u32), b: (u32, u32)) -> bool {
    let (lo, hi) = (a.0.min(a.1), a.0.max(a.1));
    let inside = |x: u32| lo < x && x < hi;
    inside(b.0) != inside(b.1)
}

impl ChordRep {
    pub fn new(ends: Vec<(u32, u32)>) -> Result<Self> {
        let n = ends.len();
        let mut seen = vec![false; 2 * n];
        for &(a, b) in &ends {
            for p in [a, b] {
                if p as usize >= 2 * n || seen[p as usize] {
                    return Err(Error::InvalidRepresentation(
                        "chord endpoints must be 2n distinct positions in 0..2n".into(),
                    ));
                }
                seen[p as usize] = true;
            }
        }
        Ok(ChordRep { ends })
    }

    pub fn n(&self) -> usize {
        self.ends.len()
    }

    pub fn ends(&self) -> &[(u32, u32)] {
        &self.ends
    }

    pub fn induced_graph(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if chords_cross(self.ends[u], self.ends[v]) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    pub fn validate_against(&self, g: &Graph) -> Result<()> {
        if g.n() != self.n() || self.induced_graph() != *g {
            return Err(Error::InvalidRepresentation(
                "chord diagram does not induce the instance graph".into(),
            ));
        }
        Ok(())
    }
}

/// Which side of the equator a chord endpoint lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Top,
    Bottom,
}

/// Per-vertex entry of a path label; endpoint chords carry a single side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelEntry {
    Source(Side),
    Interior(Side, Side),
    Target(Side),
}

impl std::fmt::Display for LabelEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = |s: Side| match s {
            Side::Top => 'T',
            Side::Bottom => 'B',
        };
        match self {
            LabelEntry::Source(s) => write!(f, "s{}", c(*s)),
            LabelEntry::Interior(a, b) => write!(f, "{}{}", c(*a), c(*b)),
            LabelEntry::Target(s) => write!(f, "{}t", c(*s)),
        }
    }
}

/// The concatenated per-vertex labels of a shortest path; invariant under
/// reconfiguration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathLabel {
    pub entries: Vec<LabelEntry>,
}

impl std::fmt::Display for PathLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| format!("({e})")).collect();
        f.write_str(&parts.join(""))
    }
}

/// Geometry shared by labelling and solving: chord orientations and the
/// equator. Built once per instance.
pub(crate) struct CircleContext {
    /// Per on-path chord of layers 1..l-1: (first endpoint, second endpoint).
    oriented: HashMap<usize, (u32, u32)>,
    /// Equator endpoints in doubled coordinates (odd values, between chords).
    equator: (u32, u32),
    positions: u32,
}

/// Is x strictly inside the ccw arc from a to b (all in common coordinates)?
fn in_arc(x: u32, a: u32, b: u32) -> bool {
    if a < b {
        a < x && x < b
    } else {
        x > a || x < b
    }
}

impl CircleContext {
    pub(crate) fn build(rep: &ChordRep, instance: &StInstance) -> Result<Self> {
        let oriented = orient_chords(rep, instance)?;
        let equator = find_equator(rep, instance);
        Ok(CircleContext {
            oriented,
            equator,
            positions: 2 * rep.n() as u32,
        })
    }

    fn side(&self, raw_pos: u32) -> Side {
        // doubled coordinates: chord endpoints are even, the equator's odd
        let x = 2 * raw_pos;
        debug_assert!(x < 2 * self.positions);
        if in_arc(x, self.equator.0, self.equator.1) {
            Side::Top
        } else {
            Side::Bottom
        }
    }

    fn interior_label(&self, v: usize) -> LabelEntry {
        let (first, second) = self.oriented[&v];
        LabelEntry::Interior(self.side(first), self.side(second))
    }
}

/// Assigns every shortest-path chord its unique orientation from the crossing
/// with a previous-layer chord to the crossing with a next-layer chord.
/// Conflicting pairs mean the input is not a valid circle-graph instance.
fn orient_chords(rep: &ChordRep, instance: &StInstance) -> Result<HashMap<usize, (u32, u32)>> {
    let dag = instance.shortest_path_dag();
    let layering = instance.layering_from_s();
    let ell = instance.st_distance();
    let mut oriented = HashMap::new();
    for v in 0..instance.n() {
        let Some(layer) = layering.layer(v) else {
            continue;
        };
        if layer == 0 || layer >= ell {
            continue;
        }
        if !on_some_shortest_path(instance, v) {
            continue;
        }
        let prevs = dag.predecessors(v);
        let nexts = dag.successors(v);
        let mut first: Option<u32> = None;
        for &u in &prevs {
            for &w in nexts {
                let f = first_endpoint(rep.ends[v], rep.ends[u], rep.ends[w])
                    .ok_or(Error::OrientationConflict { chord: v })?;
                match first {
                    None => first = Some(f),
                    Some(prev) if prev != f => {
                        return Err(Error::OrientationConflict { chord: v });
                    }
                    _ => {}
                }
            }
        }
        if let Some(f) = first {
            let (a, b) = rep.ends[v];
            let second = if f == a { b } else { a };
            oriented.insert(v, (f, second));
        }
    }
    Ok(oriented)
}

fn on_some_shortest_path(instance: &StInstance, v: usize) -> bool {
    match (
        instance.layering_from_s().layer(v),
        instance.layering_from_t().layer(v),
    ) {
        (Some(ds), Some(dt)) => ds + dt == instance.st_distance(),
        _ => false,
    }
}

/// The endpoint of `v` behind the crossing with `u`, where `u` (previous
/// layer) and `w` (next layer) both cross `v` but, being two layers apart,
/// never cross each other. Returns `None` if they do cross (invalid input).
fn first_endpoint(v: (u32, u32), u: (u32, u32), w: (u32, u32)) -> Option<u32> {
    let (e1, e2) = (v.0.min(v.1), v.0.max(v.1));
    let split = |c: (u32, u32)| {
        if e1 < c.0 && c.0 < e2 {
            (c.0, c.1)
        } else {
            (c.1, c.0)
        }
    };
    let (u_in, u_out) = split(u);
    let (w_in, w_out) = split(w);
    // Order crossings along v from e1: u comes first iff w lies entirely in
    // the side of u containing e2.
    let out_pos = |x: u32| if x > e2 { x } else { x + 1_000_000 };
    let w_on_e2_side = u_in < w_in && out_pos(w_out) < out_pos(u_out);
    let w_on_e1_side = w_in < u_in && out_pos(u_out) < out_pos(w_out);
    match (w_on_e2_side, w_on_e1_side) {
        (true, false) => Some(e1),
        (false, true) => Some(e2),
        _ => None,
    }
}

/// Finds the equator in doubled coordinates: a chord through two inter-chord
/// gaps crossing every chord if one exists, else a synthetic chord hugging
/// the far sides of the s and t chords, which crosses s, t, and exactly the
/// chords separating them.
fn find_equator(rep: &ChordRep, instance: &StInstance) -> (u32, u32) {
    let m = 2 * rep.n() as u32; // positions; doubled circle has 2m points
    // gap g (odd value 2g+1) sits between positions g and g+1
    for g1 in 0..m {
        'outer: for g2 in g1 + 1..m {
            let (a, b) = (2 * g1 + 1, 2 * g2 + 1);
            for &(p, q) in rep.ends() {
                if in_arc(2 * p, a, b) == in_arc(2 * q, a, b) {
                    continue 'outer;
                }
            }
            return (a, b);
        }
    }
    synthetic_equator(rep, instance, m)
}

fn synthetic_equator(rep: &ChordRep, instance: &StInstance, m: u32) -> (u32, u32) {
    let sc = rep.ends[instance.s()];
    let tc = rep.ends[instance.t()];
    let (s0, s1) = (sc.0.min(sc.1), sc.0.max(sc.1));
    let (t0, t1) = (tc.0.min(tc.1), tc.0.max(tc.1));
    let t_inside_s = s0 < t0 && t1 < s1;
    let s_inside_t = t0 < s0 && s1 < t1;
    // one endpoint in the gap hugging the s chord on its far side
    let a = if t_inside_s {
        (2 * s0 + 2 * m - 1) % (2 * m)
    } else {
        2 * s0 + 1
    };
    let b = if s_inside_t {
        (2 * t0 + 2 * m - 1) % (2 * m)
    } else {
        2 * t0 + 1
    };
    (a.min(b), a.max(b))
}

/// The label of a shortest path: interior chords get their two endpoint
/// sides in orientation order; the s and t markers take the adjacent side of
/// the neighboring chord, which the chaining property forces.
pub fn chord_label(rep: &ChordRep, instance: &StInstance, path: &ShortestPath) -> Result<PathLabel> {
    rep.validate_against(instance.graph())?;
    instance
        .check_st_shortest_path(path.vertices())
        .map_err(Error::InvalidPath)?;
    let ctx = CircleContext::build(rep, instance)?;
    Ok(label_with_context(&ctx, path))
}

fn label_with_context(ctx: &CircleContext, path: &ShortestPath) -> PathLabel {
    let v = path.vertices();
    let mut entries = Vec::with_capacity(v.len());
    if v.len() == 2 {
        // no interior chords: the single edge is the unique shortest path
        entries.push(LabelEntry::Source(Side::Top));
        entries.push(LabelEntry::Target(Side::Top));
        return PathLabel { entries };
    }
    let interior: Vec<LabelEntry> = v[1..v.len() - 1]
        .iter()
        .map(|&x| ctx.interior_label(x))
        .collect();
    let LabelEntry::Interior(first_side, _) = interior[0] else {
        unreachable!()
    };
    let LabelEntry::Interior(_, last_side) = interior[interior.len() - 1] else {
        unreachable!()
    };
    entries.push(LabelEntry::Source(first_side));
    entries.extend(interior);
    entries.push(LabelEntry::Target(last_side));
    PathLabel { entries }
}

/// Decides SPR on a circle instance by comparing path labels; the sequence is
/// built by a greedy position-by-position merge validated at every stage,
/// with the generic oracle as a flagged fallback if the merge ever stalls.
/// Distances up to 2 go through the bounded-diameter solver.
pub fn circle_solve(
    rep: &ChordRep,
    instance: &StInstance,
    p: &ShortestPath,
    q: &ShortestPath,
) -> Result<SolveOutcome> {
    rep.validate_against(instance.graph())?;
    instance
        .check_st_shortest_path(p.vertices())
        .map_err(Error::InvalidPath)?;
    instance
        .check_st_shortest_path(q.vertices())
        .map_err(Error::InvalidPath)?;
    if p == q {
        return Ok(SolveOutcome::yes(ReconfigSequence::empty(p.clone())));
    }
    if instance.st_distance() <= 2 {
        return bounded_diameter_solve(instance, p, q, &BoundedParams::default());
    }

    let ctx = CircleContext::build(rep, instance)?;
    if label_with_context(&ctx, p) != label_with_context(&ctx, q) {
        return Ok(SolveOutcome::no());
    }

    let mut a = p.vertices().to_vec();
    let mut b = q.vertices().to_vec();
    let last = a.len() - 1;
    let mut steps_a: Vec<KStep> = Vec::new();
    let mut steps_b: Vec<KStep> = Vec::new();
    let mut stalled = false;
    while let Some(i) = (1..last).find(|&i| a[i] != b[i]) {
        let try_replace = |target: &mut Vec<usize>, keeper: usize, steps: &mut Vec<KStep>| {
            let old = target[i];
            target[i] = keeper;
            if instance.is_st_shortest_path(target) {
                steps.push(KStep {
                    anchor_lo: i - 1,
                    anchor_hi: i + 1,
                    old_block: vec![old],
                    new_block: vec![keeper],
                });
                true
            } else {
                target[i] = old;
                false
            }
        };
        let bv = b[i];
        let av = a[i];
        if try_replace(&mut a, bv, &mut steps_a) {
            continue;
        }
        if try_replace(&mut b, av, &mut steps_b) {
            continue;
        }
        stalled = true;
        break;
    }

    if stalled {
        // the merge sketch does not cover this configuration; fall back to
        // the exact oracle and flag it
        let seq = shortest_reconfig_sequence(instance, p, q, 1, BoundedParams::default().path_cap)?
            .ok_or(Error::OrientationConflict { chord: instance.s() })?;
        return Ok(SolveOutcome {
            reconfigurable: true,
            sequence: Some(seq),
            oracle_fallback: true,
        });
    }

    let forward = ReconfigSequence {
        start: p.clone(),
        steps: steps_a,
    };
    let backward = ReconfigSequence {
        start: q.clone(),
        steps: steps_b,
    };
    let sequence = forward.chain(backward.reversed());
    sequence.replay(instance)?;
    Ok(SolveOutcome::yes(sequence))
}
