//! Exact solvers for the cost variants MinSumSPR, MinMaxSPR and
//! MinTop-l-SPR, plus the two-tier Reduc cost table and its SPR decision
//! threshold. Steps may change any number of contiguous vertices; a step's
//! size is the smallest block describing it and its price comes from a
//! monotone table. All arithmetic is exact.

use std::collections::{BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{ShortestPath, StInstance};
use crate::oracle::{kstep_between, KStep, ReconfigSequence};

pub type Cost = BigRational;

/// Monotone price table: `price(i)` is the cost of changing `i` contiguous
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostModel {
    p: Vec<Cost>,
}

impl CostModel {
    pub fn new(p: Vec<Cost>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::PreconditionViolated("empty cost table".into()));
        }
        if p[0] < Cost::zero() {
            return Err(Error::PreconditionViolated("costs must be nonnegative".into()));
        }
        if p.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::PreconditionViolated(
                "cost table must be monotone nondecreasing".into(),
            ));
        }
        Ok(CostModel { p })
    }

    pub fn from_integers(p: &[u64]) -> Result<Self> {
        CostModel::new(p.iter().map(|&x| Cost::from_integer(x.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Price of changing `i` contiguous vertices (1-based).
    pub fn price(&self, i: usize) -> &Cost {
        &self.p[i - 1]
    }

    pub fn table(&self) -> &[Cost] {
        &self.p
    }
}

/// The Reduc table: single-vertex steps cost 1, anything wider costs
/// `l * 2^(n^2 + 1)`.
pub fn reduc_costs(n: usize, l: usize) -> CostModel {
    assert!(n >= 1 && l >= 1);
    let big: BigInt = BigInt::from(l) * (BigInt::one() << (n * n + 1));
    let mut p = vec![Cost::from_integer(big); n];
    p[0] = Cost::one();
    CostModel::new(p).expect("reduc table is monotone")
}

/// How many of the largest step costs the objective sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopL {
    Bounded(usize),
    Unbounded,
}

/// A sequence with its step costs and the three aggregate views.
#[derive(Debug, Clone)]
pub struct CostedSequence {
    pub sequence: ReconfigSequence,
    pub step_costs: Vec<Cost>,
    pub total: Cost,
    pub max: Cost,
    /// The objective value the query optimized.
    pub objective: Cost,
}

fn costed(sequence: ReconfigSequence, costs: &CostModel, objective: Cost) -> CostedSequence {
    let step_costs: Vec<Cost> = sequence
        .steps
        .iter()
        .map(|s| costs.price(s.width()).clone())
        .collect();
    let total = step_costs.iter().fold(Cost::zero(), |a, b| a + b);
    let max = step_costs.iter().cloned().max().unwrap_or_else(Cost::zero);
    CostedSequence {
        sequence,
        step_costs,
        total,
        max,
        objective,
    }
}

/// Shared search substrate: the enumerated paths and the pairwise minimal
/// block widths.
struct PathSpace {
    paths: Vec<ShortestPath>,
    width: Vec<Vec<usize>>, // width[i][j]: minimal block size turning i into j
    src: usize,
    dst: usize,
}

impl PathSpace {
    fn build(
        instance: &StInstance,
        p: &ShortestPath,
        q: &ShortestPath,
        cap: usize,
    ) -> Result<Self> {
        instance
            .check_st_shortest_path(p.vertices())
            .map_err(Error::InvalidPath)?;
        instance
            .check_st_shortest_path(q.vertices())
            .map_err(Error::InvalidPath)?;
        let paths = instance.enumerate_shortest_paths(cap)?;
        let find = |x: &ShortestPath| {
            paths
                .binary_search_by(|c| c.vertices().cmp(x.vertices()))
                .expect("path enumerated")
        };
        let src = find(p);
        let dst = find(q);
        let m = paths.len();
        let mut width = vec![vec![0usize; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let step = kstep_between(&paths[i], &paths[j]).expect("distinct");
                width[i][j] = step.width();
                width[j][i] = step.width();
            }
        }
        Ok(PathSpace {
            paths,
            width,
            src,
            dst,
        })
    }

    fn step(&self, i: usize, j: usize) -> KStep {
        kstep_between(&self.paths[i], &self.paths[j]).expect("distinct")
    }

    fn sequence_from_route(&self, route: &[usize]) -> ReconfigSequence {
        let start = self.paths[route[0]].clone();
        let steps = route
            .windows(2)
            .map(|w| self.step(w[0], w[1]))
            .collect();
        ReconfigSequence { start, steps }
    }
}

/// Minimum-total-cost sequence, by exact Dijkstra over the complete path
/// graph weighted by block prices. The returned route is the
/// lexicographically least simple optimal one.
pub fn min_sum(
    instance: &StInstance,
    p: &ShortestPath,
    q: &ShortestPath,
    costs: &CostModel,
    cap: usize,
) -> Result<Option<CostedSequence>> {
    let space = PathSpace::build(instance, p, q, cap)?;
    check_table_covers(instance, costs)?;
    if space.src == space.dst {
        let seq = ReconfigSequence::empty(space.paths[space.src].clone());
        return Ok(Some(costed(seq, costs, Cost::zero())));
    }
    let m = space.paths.len();
    // Dijkstra from the destination; deterministic parents give the route.
    let mut dist: Vec<Option<Cost>> = vec![None; m];
    let mut parent: Vec<usize> = vec![usize::MAX; m];
    let mut heap: BinaryHeap<std::cmp::Reverse<(Cost, usize)>> = BinaryHeap::new();
    dist[space.dst] = Some(Cost::zero());
    heap.push(std::cmp::Reverse((Cost::zero(), space.dst)));
    while let Some(std::cmp::Reverse((d, u))) = heap.pop() {
        if dist[u].as_ref() != Some(&d) {
            continue;
        }
        #[allow(clippy::needless_range_loop)]
        for v in 0..m {
            if v == u {
                continue;
            }
            let nd = &d + costs.price(space.width[u][v]);
            if dist[v].as_ref().is_none_or(|cur| nd < *cur) {
                dist[v] = Some(nd.clone());
                parent[v] = u;
                heap.push(std::cmp::Reverse((nd, v)));
            }
        }
    }
    let best = dist[space.src].clone().expect("complete graph is connected");
    let route = follow_parents(&space, &parent);
    let seq = space.sequence_from_route(&route);
    let objective = best;
    Ok(Some(costed(seq, costs, objective)))
}

/// Route from src to dst along parent pointers of a dst-rooted search.
fn follow_parents(space: &PathSpace, parent: &[usize]) -> Vec<usize> {
    let mut route = vec![space.src];
    let mut cur = space.src;
    while cur != space.dst {
        cur = parent[cur];
        debug_assert_ne!(cur, usize::MAX, "parent chain reaches the destination");
        route.push(cur);
    }
    route
}

/// Minimum over sequences of the maximum step cost. Monotone prices make the
/// optimum `price(k*)` with `k*` the least width threshold connecting the two
/// paths; the sequence is a fewest-step route within that threshold.
pub fn min_max(
    instance: &StInstance,
    p: &ShortestPath,
    q: &ShortestPath,
    costs: &CostModel,
    cap: usize,
) -> Result<Option<CostedSequence>> {
    let space = PathSpace::build(instance, p, q, cap)?;
    check_table_covers(instance, costs)?;
    if space.src == space.dst {
        let seq = ReconfigSequence::empty(space.paths[space.src].clone());
        return Ok(Some(costed(seq, costs, Cost::zero())));
    }
    let m = space.paths.len();
    // bottleneck widths from the destination
    let mut bott: Vec<Option<usize>> = vec![None; m];
    let mut heap: BinaryHeap<std::cmp::Reverse<(usize, usize)>> = BinaryHeap::new();
    bott[space.dst] = Some(0);
    heap.push(std::cmp::Reverse((0, space.dst)));
    while let Some(std::cmp::Reverse((b, u))) = heap.pop() {
        if bott[u] != Some(b) {
            continue;
        }
        #[allow(clippy::needless_range_loop)]
        for v in 0..m {
            if v == u {
                continue;
            }
            let nb = b.max(space.width[u][v]);
            if bott[v].is_none_or(|cur| nb < cur) {
                bott[v] = Some(nb);
                heap.push(std::cmp::Reverse((nb, v)));
            }
        }
    }
    let k_star = bott[space.src].expect("complete graph is connected");
    // fewest steps within the threshold; BFS parents fix the route
    let mut hops: Vec<Option<usize>> = vec![None; m];
    let mut parent: Vec<usize> = vec![usize::MAX; m];
    let mut queue = std::collections::VecDeque::from([space.dst]);
    hops[space.dst] = Some(0);
    while let Some(u) = queue.pop_front() {
        for v in 0..m {
            if v != u && space.width[u][v] <= k_star && hops[v].is_none() {
                hops[v] = Some(hops[u].unwrap() + 1);
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    let route = follow_parents(&space, &parent);
    let seq = space.sequence_from_route(&route);
    let objective = costs.price(k_star).clone();
    Ok(Some(costed(seq, costs, objective)))
}

/// Minimizes the sum of the `l` largest step costs by Dijkstra over
/// (path, kept-multiset) states with componentwise dominance pruning.
/// `TopL::Unbounded` is the l = infinity special case, i.e. MinSumSPR.
pub fn min_top_l(
    instance: &StInstance,
    p: &ShortestPath,
    q: &ShortestPath,
    costs: &CostModel,
    l: TopL,
    cap: usize,
) -> Result<Option<CostedSequence>> {
    let l = match l {
        TopL::Unbounded => return min_sum(instance, p, q, costs, cap),
        TopL::Bounded(l) => {
            if l == 0 {
                return Err(Error::PreconditionViolated("top-l needs l >= 1".into()));
            }
            l
        }
    };
    let space = PathSpace::build(instance, p, q, cap)?;
    check_table_covers(instance, costs)?;
    if space.src == space.dst {
        let seq = ReconfigSequence::empty(space.paths[space.src].clone());
        return Ok(Some(costed(seq, costs, Cost::zero())));
    }
    let m = space.paths.len();

    // multisets are kept sorted descending, at most l entries
    type Multiset = Vec<Cost>;
    let insert_top = |mut ms: Multiset, c: Cost| -> Multiset {
        let pos = ms.iter().position(|x| c > *x).unwrap_or(ms.len());
        ms.insert(pos, c);
        ms.truncate(l);
        ms
    };
    let sum_of = |ms: &Multiset| ms.iter().fold(Cost::zero(), |a, b| a + b);
    // ms1 dominates ms2 when padded componentwise <=
    let dominates = |a: &Multiset, b: &Multiset| -> bool {
        (0..l.min(b.len().max(a.len()))).all(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Cost::zero);
            let y = b.get(i).cloned().unwrap_or_else(Cost::zero);
            x <= y
        })
    };

    let start_state = (space.src, Multiset::new());
    let mut settled: Vec<Vec<Multiset>> = vec![Vec::new(); m];
    let mut parent: HashMap<(usize, Multiset), (usize, Multiset)> = HashMap::new();
    let mut heap: BinaryHeap<std::cmp::Reverse<(Cost, usize, Multiset)>> = BinaryHeap::new();
    heap.push(std::cmp::Reverse((Cost::zero(), space.src, Multiset::new())));
    let mut goal: Option<(usize, Multiset)> = None;
    while let Some(std::cmp::Reverse((_, u, ms))) = heap.pop() {
        if settled[u].iter().any(|s| dominates(s, &ms)) {
            continue;
        }
        settled[u].push(ms.clone());
        if u == space.dst {
            goal = Some((u, ms));
            break;
        }
        #[allow(clippy::needless_range_loop)]
        for v in 0..m {
            if v == u {
                continue;
            }
            let c = costs.price(space.width[u][v]).clone();
            let nms = insert_top(ms.clone(), c);
            if settled[v].iter().any(|s| dominates(s, &nms)) {
                continue;
            }
            let key = (v, nms.clone());
            parent.entry(key).or_insert_with(|| (u, ms.clone()));
            heap.push(std::cmp::Reverse((sum_of(&nms), v, nms)));
        }
    }
    let goal = goal.expect("complete graph is connected");
    let objective = sum_of(&goal.1);
    // reconstruct the state route
    let mut route = vec![goal.0];
    let mut cur = goal.clone();
    while cur != start_state {
        cur = parent[&cur].clone();
        route.push(cur.0);
    }
    route.reverse();
    let seq = space.sequence_from_route(&route);
    Ok(Some(costed(seq, costs, objective)))
}

fn check_table_covers(instance: &StInstance, costs: &CostModel) -> Result<()> {
    if costs.len() < instance.n() {
        return Err(Error::PreconditionViolated(format!(
            "cost table has {} entries but the graph has {} vertices",
            costs.len(),
            instance.n()
        )));
    }
    Ok(())
}

/// Algorithm "Reduc": solve MinTop-l under the two-tier costs and compare
/// with the threshold. A yes-instance pays at most l in unit steps; a
/// no-instance must pay for a wide step at least once, which already reaches
/// `l * 2^(n^2+1)`, so the exact optimum separates strictly below the
/// threshold.
pub fn reduc_decide(
    instance: &StInstance,
    p: &ShortestPath,
    q: &ShortestPath,
    l: usize,
    cap: usize,
) -> Result<bool> {
    assert!(l >= 1);
    let costs = reduc_costs(instance.n(), l);
    let out = min_top_l(instance, p, q, &costs, TopL::Bounded(l), cap)?
        .expect("block steps always connect two shortest paths");
    let threshold = Cost::from_integer(BigInt::from(l) * (BigInt::one() << (instance.n() * instance.n() + 1)));
    Ok(out.objective < threshold)
}
