//! Exact solvers used as ground truth.
//!
//! [`solve_exact`] enumerates total orientations of the cross edges (back
//! edges have a single feasible direction and are fixed up front), keeping
//! a transitive-closure bitset so infeasible prefixes are cut as soon as
//! they close a cycle. [`solve_exact_by_orders`] takes the other route:
//! every acyclic orientation is induced by a linear extension of the tree
//! order, so it maximizes over those with a dynamic program on the
//! root-containing subtrees (order ideals) of the tree.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::instance::{
    classify_edges, coverage, CoverageReport, Direction, Instance, NodeId, Orientation,
};
use crate::weight::Weight;

pub const DEFAULT_EDGE_LIMIT: usize = 20;
pub const DEFAULT_STATE_LIMIT: usize = 1 << 21;

/// Sum of the weights of all non-root endpoints of undirected edges.
pub fn upper_bound(inst: &Instance) -> Weight {
    let coverable = inst.coverable();
    inst.weight_of((0..inst.n()).filter(|&v| coverable[v]))
}

/// Ground truth for any instance the oracles can handle: the enumeration
/// up to [`DEFAULT_EDGE_LIMIT`] edges, the order DP beyond.
pub fn solve_reference(inst: &Instance) -> Result<(Orientation, CoverageReport)> {
    if inst.edges().len() <= DEFAULT_EDGE_LIMIT {
        solve_exact(inst, DEFAULT_EDGE_LIMIT)
    } else {
        solve_exact_by_orders(inst, DEFAULT_STATE_LIMIT)
    }
}

struct Closure {
    words: usize,
    bits: Vec<u64>,
}

impl Closure {
    fn row(&self, v: NodeId) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    fn reaches(&self, from: NodeId, to: NodeId) -> bool {
        self.row(from)[to / 64] >> (to % 64) & 1 == 1
    }

    /// Adds `a → b` and closes transitively.
    fn add_arc(&mut self, n: usize, a: NodeId, b: NodeId) {
        let w = self.words;
        let mut add = self.row(b).to_vec();
        add[b / 64] |= 1 << (b % 64);
        for x in 0..n {
            if x == a || self.reaches(x, a) {
                for (dst, src) in self.bits[x * w..(x + 1) * w].iter_mut().zip(&add) {
                    *dst |= *src;
                }
            }
        }
    }
}

struct Search<'a> {
    n: usize,
    units: &'a [i64],
    cross: Vec<(usize, NodeId, NodeId)>,
    closure: Closure,
    out_count: Vec<u32>,
    value: i64,
    current: Vec<Direction>,
    best_value: i64,
    best: Option<Vec<Direction>>,
}

impl Search<'_> {
    fn run(&mut self, k: usize) {
        if k == self.cross.len() {
            if self.best.is_none() || self.value > self.best_value {
                self.best_value = self.value;
                self.best = Some(self.current.clone());
            }
            return;
        }
        let (_, u, v) = self.cross[k];
        for dir in [Direction::Forward, Direction::Backward] {
            let (a, b) = match dir {
                Direction::Forward => (u, v),
                Direction::Backward => (v, u),
            };
            if self.closure.reaches(b, a) {
                continue;
            }
            let saved = self.closure.bits.clone();
            self.closure.add_arc(self.n, a, b);
            if self.out_count[a] == 0 {
                self.value += self.units[a];
            }
            self.out_count[a] += 1;
            self.current.push(dir);

            self.run(k + 1);

            self.current.pop();
            self.out_count[a] -= 1;
            if self.out_count[a] == 0 {
                self.value -= self.units[a];
            }
            self.closure.bits = saved;
        }
    }
}

/// Exhaustive optimum over all feasible total orientations. Among optimal
/// orientations the lexicographically smallest direction vector is returned
/// (`Forward < Backward`, edges in index order).
pub fn solve_exact(inst: &Instance, limit: usize) -> Result<(Orientation, CoverageReport)> {
    let m = inst.edges().len();
    if m > limit {
        return Err(Error::TooLarge { edges: m, limit });
    }
    let scale = inst.scaled_weights()?;
    let n = inst.n();
    let classes = classify_edges(inst);
    let words = n.div_ceil(64).max(1);
    let mut closure = Closure {
        words,
        bits: vec![0; n * words],
    };
    // Every node reaches all of its tree ancestors; back edges add nothing.
    for v in 0..n {
        let mut a = inst.parent(v);
        while let Some(p) = a {
            closure.bits[v * words + p / 64] |= 1 << (p % 64);
            a = inst.parent(p);
        }
    }
    let mut out_count = vec![0u32; n];
    let mut value = 0;
    let mut base = Orientation::for_instance(inst);
    for &(e, dir) in &classes.back {
        base.set(e, dir);
        let (u, v) = inst.edge(e);
        let from = if dir == Direction::Forward { u } else { v };
        if out_count[from] == 0 {
            value += scale.units[from];
        }
        out_count[from] += 1;
    }
    let cross: Vec<_> = classes
        .cross
        .iter()
        .map(|&e| {
            let (u, v) = inst.edge(e);
            (e, u, v)
        })
        .collect();
    let mut search = Search {
        n,
        units: &scale.units,
        cross,
        closure,
        out_count,
        value,
        current: Vec::new(),
        best_value: i64::MIN,
        best: None,
    };
    search.run(0);
    // Cross edges always admit the pre-order orientation, so a solution exists.
    let dirs = search.best.expect("a feasible orientation always exists");
    for (&(e, _, _), dir) in search.cross.iter().zip(dirs) {
        base.set(e, dir);
    }
    let report = coverage(inst, &base)?;
    Ok((base, report))
}

/// Exact optimum by dynamic programming over linear extensions of the tree
/// order. Each state is the set of nodes placed at the end of the order
/// (always a subtree containing the root); prepending a node covers it iff
/// one of its edge neighbours is already placed. Fails when the tree has
/// more than `state_limit` such subtrees.
pub fn solve_exact_by_orders(
    inst: &Instance,
    state_limit: usize,
) -> Result<(Orientation, CoverageReport)> {
    let n = inst.n();
    assert!(n <= 128, "order oracle supports at most 128 nodes");
    let scale = inst.scaled_weights()?;
    let mut nbr = vec![0u128; n];
    for &(u, v) in inst.edges() {
        nbr[u] |= 1 << v;
        nbr[v] |= 1 << u;
    }
    let parent_bit: Vec<u128> = (0..n)
        .map(|v| inst.parent(v).map_or(0, |p| 1u128 << p))
        .collect();

    // state -> (value, predecessor state, node added)
    let mut table: HashMap<u128, (i64, u128, NodeId)> = HashMap::new();
    let start = 1u128 << inst.root();
    table.insert(start, (0, 0, inst.root()));
    let mut layer = vec![start];
    for _ in 1..n {
        let mut next: HashMap<u128, (i64, u128, NodeId)> = HashMap::new();
        layer.sort_unstable();
        for &state in &layer {
            let value = table[&state].0;
            for v in 0..n {
                if state >> v & 1 == 1 || parent_bit[v] & state == 0 {
                    continue;
                }
                let gain = if nbr[v] & state != 0 {
                    scale.units[v]
                } else {
                    0
                };
                let to = state | 1 << v;
                let cand = (value + gain, state, v);
                match next.get(&to) {
                    Some(&(best, _, _)) if best >= cand.0 => {}
                    _ => {
                        next.insert(to, cand);
                    }
                }
            }
        }
        if table.len() + next.len() > state_limit {
            return Err(Error::TooManyStates { limit: state_limit });
        }
        layer = next.keys().copied().collect();
        table.extend(next);
    }

    // Nodes in the order they were prepended: the last one is first overall.
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut placed = Vec::with_capacity(n);
    let mut state = full;
    while state != 0 {
        let (_, prev, v) = table[&state];
        placed.push(v);
        state = prev;
    }
    let mut pos = vec![0usize; n];
    for (i, &v) in placed.iter().enumerate() {
        pos[v] = i;
    }
    let dirs = inst
        .edges()
        .iter()
        .map(|&(u, v)| {
            if pos[u] < pos[v] {
                Direction::Forward
            } else {
                Direction::Backward
            }
        })
        .collect();
    let o = Orientation::total(dirs);
    let report = coverage(inst, &o)?;
    Ok((o, report))
}
