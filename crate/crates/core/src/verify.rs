//! Solver-versus-oracle sweeps over seeded random instance families. The CLI
//! `verify` subcommand and the acceptance suite both run these.

use num_bigint::BigUint;
use num_traits::One;

use crate::classes::{
    chord_label, circle_solve, circular_arc_solve, hypercube_graph, hypercube_solve,
    kendall_tau, lr_edge_type, path_to_permutation, permutation_solve, weakly_modular_solve,
    HypercubeRep,
};
use crate::error::{Error, Result};
use crate::generators::{
    random_arc_rep, random_chord_rep, random_graph, random_interval_graph,
    random_permutation_rep, rng_for,
};
use crate::graph::{Graph, ShortestPath, StInstance};
use crate::oracle::{kstep_between, large_k_shortcut, Diameter, ReconfigGraph};
use crate::reductions::{gadget_chain, graph_power, kspr_line_instance, power_map_path};

/// Outcome of one sweep; `mismatches` lists human-readable descriptions of
/// every disagreement found (empty on success).
#[derive(Debug, Clone, Default)]
pub struct SweepOutcome {
    pub instances: usize,
    pub pairs: usize,
    pub sequences_checked: usize,
    pub oracle_fallbacks: usize,
    pub skipped_cap: usize,
    pub mismatches: Vec<String>,
}

impl SweepOutcome {
    pub fn agreement_ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// All ordered (s,t) pairs of `g` at distance at least `min_d`.
fn st_pairs(g: &Graph, min_d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in 0..g.n() {
        let dist = g.bfs(s);
        for (t, d) in dist.iter().enumerate() {
            if s != t && matches!(d, Some(d) if *d >= min_d) {
                out.push((s, t));
            }
        }
    }
    out
}

/// Component ids of the 1-SPR reconfiguration graph, or `None` past the cap.
fn oracle_components(instance: &StInstance, cap: usize) -> Result<Option<(ReconfigGraph, Vec<usize>)>> {
    match ReconfigGraph::build(instance, 1, cap) {
        Ok(rg) => {
            let comps = rg.components();
            Ok(Some((rg, comps)))
        }
        Err(Error::CapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Permutation solver against the oracle: every (s,t) with d >= 3, every
/// shortest-path pair, verdicts must agree and yes-sequences must replay.
pub fn sweep_permutation(
    n_lo: usize,
    n_hi: usize,
    seeds_per_n: u64,
    salt: u64,
    path_cap: usize,
) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::default();
    for n in n_lo..=n_hi {
        for seed in 0..seeds_per_n {
            let mut rng = rng_for(salt ^ ((n as u64) << 32 | seed));
            let rep = random_permutation_rep(n, &mut rng);
            let g = rep.induced_graph();
            for (s, t) in st_pairs(&g, 3) {
                let instance = StInstance::new(g.clone(), s, t)?;
                out.instances += 1;
                let Some((rg, comps)) = oracle_components(&instance, path_cap)? else {
                    out.skipped_cap += 1;
                    continue;
                };
                // every oracle 1-step preserves the type of the first edge
                for (i, p) in rg.paths().iter().enumerate() {
                    let tp = lr_edge_type(&rep, &instance, (p.vertices()[0], p.vertices()[1]))?;
                    for &j in rg.neighbors(i) {
                        let qv = rg.paths()[j].vertices();
                        let tq = lr_edge_type(&rep, &instance, (qv[0], qv[1]))?;
                        if tp != tq {
                            out.mismatches.push(format!(
                                "permutation n={n} seed={seed} s={s} t={t}: 1-step changed the first-edge type"
                            ));
                        }
                    }
                }
                for (i, p) in rg.paths().iter().enumerate() {
                    for (j, q) in rg.paths().iter().enumerate() {
                        out.pairs += 1;
                        let res = permutation_solve(&rep, &instance, p, q)?;
                        let oracle_yes = comps[i] == comps[j];
                        if res.reconfigurable != oracle_yes {
                            out.mismatches.push(format!(
                                "permutation n={n} seed={seed} s={s} t={t}: solver {} oracle {} (paths {i},{j})",
                                res.reconfigurable, oracle_yes
                            ));
                            continue;
                        }
                        if let Some(seq) = res.sequence {
                            let stages = seq.replay(&instance)?;
                            if stages.last().unwrap() != q {
                                out.mismatches.push(format!(
                                    "permutation n={n} seed={seed}: sequence does not reach q"
                                ));
                            }
                            out.sequences_checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Circle solver against the oracle, plus the two invariants: oracle 1-steps
/// preserve path labels, and chord orientation is path-independent (checked
/// inside label construction).
pub fn sweep_circle(
    n_lo: usize,
    n_hi: usize,
    seeds_per_n: u64,
    salt: u64,
    path_cap: usize,
) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::default();
    for n in n_lo..=n_hi {
        for seed in 0..seeds_per_n {
            let mut rng = rng_for(salt ^ ((n as u64) << 40 | seed));
            let rep = random_chord_rep(n, &mut rng);
            let g = rep.induced_graph();
            for (s, t) in st_pairs(&g, 3) {
                let instance = StInstance::new(g.clone(), s, t)?;
                out.instances += 1;
                let Some((rg, comps)) = oracle_components(&instance, path_cap)? else {
                    out.skipped_cap += 1;
                    continue;
                };
                // label invariance across oracle edges
                for (i, p) in rg.paths().iter().enumerate() {
                    let lp = chord_label(&rep, &instance, p)?;
                    for &j in rg.neighbors(i) {
                        let lq = chord_label(&rep, &instance, &rg.paths()[j])?;
                        if lp != lq {
                            out.mismatches.push(format!(
                                "circle n={n} seed={seed} s={s} t={t}: 1-step changed the label"
                            ));
                        }
                    }
                }
                for (i, p) in rg.paths().iter().enumerate() {
                    for (j, q) in rg.paths().iter().enumerate() {
                        out.pairs += 1;
                        let res = circle_solve(&rep, &instance, p, q)?;
                        if res.oracle_fallback {
                            out.oracle_fallbacks += 1;
                        }
                        let oracle_yes = comps[i] == comps[j];
                        if res.reconfigurable != oracle_yes {
                            out.mismatches.push(format!(
                                "circle n={n} seed={seed} s={s} t={t}: solver {} oracle {} (paths {i},{j})",
                                res.reconfigurable, oracle_yes
                            ));
                            continue;
                        }
                        if let Some(seq) = res.sequence {
                            let stages = seq.replay(&instance)?;
                            if stages.last().unwrap() != q {
                                out.mismatches.push(format!(
                                    "circle n={n} seed={seed}: sequence does not reach q"
                                ));
                            }
                            out.sequences_checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Weakly-modular solver on interval-graph instances: whenever the oracle
/// says reconfigurable the solver must emit a valid sequence, within the
/// quadratic subproblem budget.
pub fn sweep_interval(n_hi: usize, seeds: u64, salt: u64, path_cap: usize) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::default();
    for seed in 0..seeds {
        let mut rng = rng_for(salt ^ (0xA11CEu64 << 16 | seed));
        let n = 4 + (seed as usize % (n_hi.saturating_sub(3)));
        let g = random_interval_graph(n, &mut rng);
        for (s, t) in st_pairs(&g, 2) {
            let instance = StInstance::new(g.clone(), s, t)?;
            out.instances += 1;
            let Some((rg, comps)) = oracle_components(&instance, path_cap)? else {
                out.skipped_cap += 1;
                continue;
            };
            for (i, p) in rg.paths().iter().enumerate() {
                for (j, q) in rg.paths().iter().enumerate() {
                    if comps[i] != comps[j] {
                        continue;
                    }
                    out.pairs += 1;
                    let wm = weakly_modular_solve(&instance, p, q)?;
                    if wm.subproblems > instance.n() * instance.n() {
                        out.mismatches.push(format!(
                            "interval n={n} seed={seed}: {} subproblems exceeds n^2",
                            wm.subproblems
                        ));
                    }
                    let stages = wm.sequence.replay(&instance)?;
                    if stages.last().unwrap() != q {
                        out.mismatches.push(format!(
                            "interval n={n} seed={seed}: sequence does not reach q"
                        ));
                    }
                    out.sequences_checked += 1;
                }
            }
        }
    }
    Ok(out)
}

/// Circular-arc solver against the oracle on random arc diagrams.
pub fn sweep_circular_arc(
    n_lo: usize,
    n_hi: usize,
    seeds_per_n: u64,
    salt: u64,
    path_cap: usize,
) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::default();
    for n in n_lo..=n_hi {
        for seed in 0..seeds_per_n {
            let mut rng = rng_for(salt ^ ((n as u64) << 48 | seed));
            let rep = random_arc_rep(n, &mut rng);
            let g = rep.induced_graph();
            for (s, t) in st_pairs(&g, 2) {
                let instance = StInstance::new(g.clone(), s, t)?;
                out.instances += 1;
                let Some((rg, comps)) = oracle_components(&instance, path_cap)? else {
                    out.skipped_cap += 1;
                    continue;
                };
                for (i, p) in rg.paths().iter().enumerate() {
                    for (j, q) in rg.paths().iter().enumerate() {
                        out.pairs += 1;
                        let res = circular_arc_solve(&rep, &instance, p, q)?;
                        if res.oracle_fallback {
                            out.oracle_fallbacks += 1;
                        }
                        let oracle_yes = comps[i] == comps[j];
                        if res.reconfigurable != oracle_yes {
                            out.mismatches.push(format!(
                                "arc n={n} seed={seed} s={s} t={t}: solver {} oracle {} (paths {i},{j})",
                                res.reconfigurable, oracle_yes
                            ));
                            continue;
                        }
                        if let Some(seq) = res.sequence {
                            seq.replay(&instance)?;
                            out.sequences_checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Hypercube optimality for every dimension up to `d_max`: solver length =
/// Kendall tau = oracle BFS distance, for all endpoint pairs and path pairs.
pub fn sweep_hypercube(d_max: u32, path_cap: usize) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::default();
    for d in 1..=d_max {
        let g = hypercube_graph(d);
        let rep = HypercubeRep::new(d)?;
        let n = g.n();
        for s in 0..n {
            for t in s + 1..n {
                let instance = StInstance::new(g.clone(), s, t)?;
                out.instances += 1;
                let rg = ReconfigGraph::build(&instance, 1, path_cap)?;
                for (i, p) in rg.paths().iter().enumerate() {
                    let dist = rg.bfs_distances(i);
                    let perm_p = path_to_permutation(d, s, t, p.vertices())?;
                    for (j, q) in rg.paths().iter().enumerate() {
                        out.pairs += 1;
                        let seq = hypercube_solve(&rep, s, t, p, q)?;
                        let perm_q = path_to_permutation(d, s, t, q.vertices())?;
                        let tau = kendall_tau(&perm_p, &perm_q)?;
                        let oracle = dist[j];
                        if oracle != Some(seq.len()) || seq.len() as u64 != tau {
                            out.mismatches.push(format!(
                                "hypercube d={d} s={s} t={t}: solver {} tau {tau} oracle {oracle:?}",
                                seq.len()
                            ));
                            continue;
                        }
                        let stages = seq.replay(&instance)?;
                        if stages.last().unwrap() != q {
                            out.mismatches
                                .push(format!("hypercube d={d}: sequence does not reach q"));
                        }
                        out.sequences_checked += 1;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Line-graph reduction equivalence: SPR on the source equals k-SPR on the
/// reduced instance, for every oracle-checkable path pair.
pub fn sweep_line_reduction(
    n_hi: usize,
    seeds: u64,
    ks: &[usize],
    salt: u64,
    path_cap: usize,
) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::default();
    for seed in 0..seeds {
        let mut rng = rng_for(salt ^ (0x11Eu64 << 24 | seed));
        let n = 4 + (seed as usize % (n_hi.saturating_sub(3)));
        let g = random_graph(n, 0.45, &mut rng);
        let Some(instance) = crate::generators::random_multipath_instance(&g, &mut rng) else {
            continue;
        };
        let Some((rg, comps)) = oracle_components(&instance, path_cap)? else {
            out.skipped_cap += 1;
            continue;
        };
        if rg.path_count() < 2 {
            continue;
        }
        out.instances += 1;
        for &k in ks {
            // the reduced instance is the same for every pair; build it once
            let p0 = &rg.paths()[0];
            let (red, _, _) = kspr_line_instance(&instance, p0, p0, k)?;
            let red_rg = ReconfigGraph::build(&red.instance, k, path_cap)?;
            let red_comps = red_rg.components();
            for (i, p) in rg.paths().iter().enumerate() {
                let pm = red.map_path(&instance, p)?;
                let pi = red_rg.index_of(&pm).expect("mapped path is enumerated");
                for (j, q) in rg.paths().iter().enumerate() {
                    out.pairs += 1;
                    let qm = red.map_path(&instance, q)?;
                    let qi = red_rg.index_of(&qm).expect("mapped path is enumerated");
                    let src_yes = comps[i] == comps[j];
                    let red_yes = red_comps[pi] == red_comps[qi];
                    if src_yes != red_yes {
                        out.mismatches.push(format!(
                            "line k={k} n={n} seed={seed}: source {} reduced {} (paths {i},{j})",
                            src_yes, red_yes
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Graph-power correspondence: SPR on G^2 equals 3-SPR on G over mapped pairs.
pub fn sweep_power_reduction(n_hi: usize, seeds: u64, salt: u64, path_cap: usize) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::default();
    for seed in 0..seeds {
        let mut rng = rng_for(salt ^ (0xF0u64 << 24 | seed));
        let n = 4 + (seed as usize % (n_hi.saturating_sub(3)));
        let g = random_graph(n, 0.4, &mut rng);
        let Some(instance) = crate::generators::random_multipath_instance(&g, &mut rng) else {
            continue;
        };
        let Some((rg, _)) = oracle_components(&instance, path_cap)? else {
            out.skipped_cap += 1;
            continue;
        };
        if rg.path_count() < 2 {
            continue;
        }
        out.instances += 1;
        let g2 = graph_power(instance.graph(), 2);
        let inst2 = StInstance::new(g2, instance.s(), instance.t())?;
        let rg2 = ReconfigGraph::build(&inst2, 1, path_cap)?;
        let comps2 = rg2.components();
        let rg3 = ReconfigGraph::build(&instance, 3, path_cap)?;
        let comps3 = rg3.components();
        for (i, p) in rg3.paths().iter().enumerate() {
            let pm = ShortestPath::new(&inst2, power_map_path(&instance, p, 2))?;
            let pi = rg2.index_of(&pm).expect("mapped path enumerated");
            for (j, q) in rg3.paths().iter().enumerate() {
                out.pairs += 1;
                let qm = ShortestPath::new(&inst2, power_map_path(&instance, q, 2))?;
                let qi = rg2.index_of(&qm).expect("mapped path enumerated");
                let yes3 = comps3[i] == comps3[j];
                let yes2 = comps2[pi] == comps2[qi];
                if yes3 != yes2 {
                    out.mismatches.push(format!(
                        "power n={n} seed={seed}: 3-SPR {} vs squared SPR {} (paths {i},{j})",
                        yes3, yes2
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Edge-set monotonicity in k and the resulting diameter monotonicity.
pub fn sweep_monotonicity(
    n_hi: usize,
    seeds: u64,
    k_hi: usize,
    salt: u64,
    path_cap: usize,
) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::default();
    for seed in 0..seeds {
        let mut rng = rng_for(salt ^ (0x300u64 << 20 | seed));
        let n = 4 + (seed as usize % (n_hi.saturating_sub(3)));
        let g = random_graph(n, 0.45, &mut rng);
        let Some(instance) = crate::generators::random_multipath_instance(&g, &mut rng) else {
            continue;
        };
        out.instances += 1;
        let mut prev_edges = None;
        let mut prev_diam: Option<Diameter> = None;
        for k in 1..=k_hi {
            let rg = match ReconfigGraph::build(&instance, k, path_cap) {
                Ok(rg) => rg,
                Err(Error::CapExceeded { .. }) => {
                    out.skipped_cap += 1;
                    break;
                }
                Err(e) => return Err(e),
            };
            let edges = rg.edge_set();
            let diam = crate::oracle::reconfig_diameter(&instance, k, path_cap)?;
            if let Some(prev) = &prev_edges {
                if !edges.is_superset(prev) {
                    out.mismatches.push(format!(
                        "monotonicity n={n} seed={seed}: k={k} lost an edge of k-1"
                    ));
                }
            }
            if let (Some(Diameter::Finite(a)), Diameter::Finite(b)) = (prev_diam, diam) {
                if b > a {
                    out.mismatches.push(format!(
                        "monotonicity n={n} seed={seed}: diameter grew from {a} to {b} at k={k}"
                    ));
                }
            }
            out.pairs += edges.len();
            prev_edges = Some(edges);
            prev_diam = Some(diam);
        }
    }
    Ok(out)
}

/// Large-k shortcut: at most 2 steps, every stage valid, for k >= n/2.
pub fn sweep_large_k(n_hi: usize, seeds: u64, salt: u64, path_cap: usize) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::default();
    for seed in 0..seeds {
        let mut rng = rng_for(salt ^ (0x5Cu64 << 32 | seed));
        let n = 4 + (seed as usize % (n_hi.saturating_sub(3)));
        let g = random_graph(n, 0.4, &mut rng);
        let Some(instance) = crate::generators::random_multipath_instance(&g, &mut rng) else {
            continue;
        };
        let paths = match instance.enumerate_shortest_paths(path_cap) {
            Ok(p) => p,
            Err(Error::CapExceeded { .. }) => {
                out.skipped_cap += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        out.instances += 1;
        let k = instance.n().div_ceil(2);
        for p in &paths {
            for q in &paths {
                out.pairs += 1;
                let seq = large_k_shortcut(&instance, p, q, k)?;
                if seq.len() > 2 {
                    out.mismatches.push(format!(
                        "large-k n={n} seed={seed}: {} steps",
                        seq.len()
                    ));
                    continue;
                }
                let stages = seq.replay(&instance)?;
                if stages.last().unwrap() != q {
                    out.mismatches
                        .push(format!("large-k n={n} seed={seed}: wrong endpoint"));
                }
                out.sequences_checked += 1;
            }
        }
    }
    Ok(out)
}

/// Gadget-chain closed forms: n = 1 + g(l+1), d(s,t) = 2g, l^g paths.
pub fn check_gadget_chain_formulas(g_hi: usize, l_hi: usize) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::default();
    for g in 1..=g_hi {
        for l in 1..=l_hi {
            out.instances += 1;
            let inst = gadget_chain(g, l);
            let expect_n = 1 + g * (l + 1);
            let expect_paths = BigUint::from(l).pow(g as u32);
            if inst.n() != expect_n
                || inst.st_distance() != 2 * g
                || inst.count_shortest_paths() != expect_paths
            {
                out.mismatches.push(format!(
                    "gadget chain g={g} l={l}: n={} d={} count={}",
                    inst.n(),
                    inst.st_distance(),
                    inst.count_shortest_paths()
                ));
            }
            // the 2^n ceiling from the subset argument
            if inst.count_shortest_paths() > (BigUint::one() << inst.n()) {
                out.mismatches
                    .push(format!("gadget chain g={g} l={l}: count exceeds 2^n"));
            }
        }
    }
    Ok(out)
}

/// Every oracle 1-step changes exactly one vertex, and the four vertices
/// involved form a 4-cycle.
pub fn check_one_step_four_cycle(instance: &StInstance, path_cap: usize) -> Result<usize> {
    let rg = ReconfigGraph::build(instance, 1, path_cap)?;
    let mut checked = 0;
    let g = instance.graph();
    for (i, p) in rg.paths().iter().enumerate() {
        for &j in rg.neighbors(i) {
            let step = kstep_between(p, &rg.paths()[j]).expect("distinct");
            assert_eq!(step.width(), 1);
            let a = p.vertices()[step.anchor_lo];
            let b = p.vertices()[step.anchor_hi];
            let old = step.old_block[0];
            let new = step.new_block[0];
            assert!(g.has_edge(a, old) && g.has_edge(old, b));
            assert!(g.has_edge(a, new) && g.has_edge(new, b));
            checked += 1;
        }
    }
    Ok(checked)
}
