//! Shared test helpers: an exhaustive sequence-space optimizer that is
//! independent of the search code it cross-checks.

use num_traits::Zero;
use spr_core::cost::{Cost, CostModel};
use spr_core::kstep_between;
use spr_core::StInstance;

/// Objective of a full step-cost list under one of the three variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Sum,
    Max,
    TopL(usize),
}

pub fn evaluate(objective: Objective, step_costs: &[Cost]) -> Cost {
    match objective {
        Objective::Sum => step_costs.iter().fold(Cost::zero(), |a, b| a + b),
        Objective::Max => step_costs.iter().cloned().max().unwrap_or_else(Cost::zero),
        Objective::TopL(l) => {
            let mut sorted = step_costs.to_vec();
            sorted.sort();
            sorted.iter().rev().take(l).fold(Cost::zero(), |a, b| a + b)
        }
    }
}

/// Incrementally maintained objective, with undo, so the DFS below touches
/// each node in O(l) arithmetic.
enum Running {
    Sum {
        stack: Vec<Cost>,
    },
    Max {
        stack: Vec<Cost>,
    },
    TopL {
        l: usize,
        kept: Vec<Cost>, // sorted descending, at most l entries
        undo: Vec<(usize, Option<Cost>)>,
        sums: Vec<Cost>,
    },
}

impl Running {
    fn new(objective: Objective) -> Self {
        match objective {
            Objective::Sum => Running::Sum {
                stack: vec![Cost::zero()],
            },
            Objective::Max => Running::Max {
                stack: vec![Cost::zero()],
            },
            Objective::TopL(l) => Running::TopL {
                l,
                kept: Vec::new(),
                undo: Vec::new(),
                sums: vec![Cost::zero()],
            },
        }
    }

    fn current(&self) -> &Cost {
        match self {
            Running::Sum { stack } | Running::Max { stack } => stack.last().unwrap(),
            Running::TopL { sums, .. } => sums.last().unwrap(),
        }
    }

    fn push(&mut self, c: Cost) {
        match self {
            Running::Sum { stack } => {
                let next = stack.last().unwrap().clone() + &c;
                stack.push(next);
            }
            Running::Max { stack } => {
                let next = stack.last().unwrap().clone().max(c);
                stack.push(next);
            }
            Running::TopL { l, kept, undo, sums } => {
                let mut sum = sums.last().unwrap().clone();
                let pos = kept.iter().position(|x| c > *x).unwrap_or(kept.len());
                if pos < *l {
                    kept.insert(pos, c.clone());
                    sum += &c;
                    let evicted = if kept.len() > *l {
                        let out = kept.pop().unwrap();
                        sum -= &out;
                        Some(out)
                    } else {
                        None
                    };
                    undo.push((pos, evicted));
                } else {
                    undo.push((usize::MAX, None));
                }
                sums.push(sum);
            }
        }
    }

    fn pop(&mut self) {
        match self {
            Running::Sum { stack } | Running::Max { stack } => {
                stack.pop();
            }
            Running::TopL { kept, undo, sums, .. } => {
                sums.pop();
                let (pos, evicted) = undo.pop().unwrap();
                if pos != usize::MAX {
                    kept.remove(pos);
                    if let Some(out) = evicted {
                        kept.push(out);
                    }
                }
            }
        }
    }
}

/// Exhaustive optimum over all simple reconfiguration sequences (no path is
/// visited twice; with nonnegative costs some simple sequence is optimal).
/// Enumerates the sequence space directly, so it stays independent of the
/// Dijkstra/dominance machinery under test.
pub fn exhaustive_optimum(
    instance: &StInstance,
    costs: &CostModel,
    objective: Objective,
    cap: usize,
    src_vertices: &[usize],
    dst_vertices: &[usize],
) -> Cost {
    let paths = instance.enumerate_shortest_paths(cap).unwrap();
    let m = paths.len();
    let find = |v: &[usize]| paths.iter().position(|p| p.vertices() == v).unwrap();
    let src = find(src_vertices);
    let dst = find(dst_vertices);
    let mut width = vec![vec![0usize; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                width[i][j] = kstep_between(&paths[i], &paths[j]).unwrap().width();
            }
        }
    }

    struct Search<'a> {
        width: &'a [Vec<usize>],
        costs: &'a CostModel,
        dst: usize,
        visited: Vec<bool>,
        running: Running,
        best: Option<Cost>,
    }
    impl Search<'_> {
        fn run(&mut self, at: usize) {
            let current = self.running.current();
            if let Some(best) = &self.best {
                // objectives only grow as steps append
                if current >= best {
                    return;
                }
            }
            if at == self.dst {
                self.best = Some(current.clone());
                return;
            }
            for next in 0..self.visited.len() {
                if self.visited[next] || next == at {
                    continue;
                }
                self.running
                    .push(self.costs.price(self.width[at][next]).clone());
                self.visited[next] = true;
                self.run(next);
                self.visited[next] = false;
                self.running.pop();
            }
        }
    }

    let mut search = Search {
        width: &width,
        costs,
        dst,
        visited: vec![false; m],
        running: Running::new(objective),
        best: None,
    };
    search.visited[src] = true;
    search.run(src);
    search.best.expect("every pair is one block step apart")
}

#[cfg(test)]
mod sanity {
    use super::*;

    #[test]
    fn running_topl_matches_reference() {
        let costs: Vec<Cost> = [3u64, 1, 4, 1, 5, 9, 2, 6]
            .iter()
            .map(|&x| Cost::from_integer(x.into()))
            .collect();
        for l in 1..=4usize {
            let mut running = Running::new(Objective::TopL(l));
            for (i, c) in costs.iter().enumerate() {
                running.push(c.clone());
                assert_eq!(
                    running.current(),
                    &evaluate(Objective::TopL(l), &costs[..=i])
                );
            }
            for i in (0..costs.len()).rev() {
                running.pop();
                assert_eq!(running.current(), &evaluate(Objective::TopL(l), &costs[..i]));
            }
        }
    }
}
