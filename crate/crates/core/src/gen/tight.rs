use num_rational::Ratio;
use rand::Rng;

use super::{padded, rng};
use crate::approx::half_approx;
use crate::instance::{Instance, InstanceParts, NodeId};
use crate::oracle::{solve_exact_by_orders, DEFAULT_STATE_LIMIT};
use crate::weight::Weight;

/// Worst instance found for the canonical orientations.
#[derive(Clone, Debug)]
pub struct Tightness {
    pub instance: Instance,
    pub optimum: Weight,
    /// Value of the better canonical orientation.
    pub canonical: Weight,
}

impl Tightness {
    /// `optimum / canonical`, or 1 when nothing can be covered.
    pub fn ratio(&self) -> Ratio<i64> {
        if self.canonical == Weight::ZERO {
            Ratio::from_integer(1)
        } else {
            self.optimum.ratio() / self.canonical.ratio()
        }
    }
}

/// Value of the better of the two canonical orientations.
pub fn canonical_value(inst: &Instance) -> Weight {
    half_approx(inst).expect("canonical orientations are feasible").1.value
}

fn evaluate(parts: InstanceParts) -> Tightness {
    let instance = Instance::new(parts).expect("search instances are valid");
    let optimum = solve_exact_by_orders(&instance, DEFAULT_STATE_LIMIT)
        .expect("small search instances fit the order oracle")
        .1
        .value;
    let canonical = canonical_value(&instance);
    Tightness {
        instance,
        optimum,
        canonical,
    }
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| padded("v", i, n.saturating_sub(1))).collect()
}

fn non_tree_pairs(n: usize, arcs: &[(NodeId, NodeId)]) -> Vec<(NodeId, NodeId)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !arcs.iter().any(|&(c, p)| (c, p) == (u, v) || (c, p) == (v, u)) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Parent arrays over `0..n` rooted at 0 that form a tree.
fn all_trees(n: usize) -> Vec<Vec<(NodeId, NodeId)>> {
    let mut out = Vec::new();
    let mut parent = vec![0usize; n];
    fn rec(v: usize, n: usize, parent: &mut Vec<usize>, out: &mut Vec<Vec<(NodeId, NodeId)>>) {
        if v == n {
            let reaches_root = (1..n).all(|s| {
                let mut cur = s;
                for _ in 0..n {
                    if cur == 0 {
                        return true;
                    }
                    cur = parent[cur];
                }
                cur == 0
            });
            if reaches_root {
                out.push((1..n).map(|c| (c, parent[c])).collect());
            }
            return;
        }
        for p in 0..n {
            if p != v {
                parent[v] = p;
                rec(v + 1, n, parent, out);
            }
        }
    }
    if n == 1 {
        return vec![Vec::new()];
    }
    rec(1, n, &mut parent, &mut out);
    out
}

fn better(a: &Tightness, b: &Tightness) -> bool {
    a.ratio() > b.ratio()
}

const EXHAUSTIVE_MAX_N: usize = 5;

/// Searches small instances for a large `optimum / canonical` ratio.
/// Every instance with up to five nodes is enumerated; larger sizes up to
/// `max_n` are explored by seeded hill climbing over edge sets on random and
/// star-shaped trees.
pub fn search_tightness_family(max_n: usize, seed: u64) -> Tightness {
    assert!(max_n >= 1);
    let mut best: Option<Tightness> = None;
    let offer = |cand: Tightness, best: &mut Option<Tightness>| {
        if best.as_ref().is_none_or(|b| better(&cand, b)) {
            *best = Some(cand);
        }
    };

    for n in 1..=max_n.min(EXHAUSTIVE_MAX_N) {
        for arcs in all_trees(n) {
            let pairs = non_tree_pairs(n, &arcs);
            for mask in 0u32..1 << pairs.len() {
                let edges = (0..pairs.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| pairs[i])
                    .collect();
                let cand = evaluate(InstanceParts {
                    names: names(n),
                    root: 0,
                    tree_arcs: arcs.clone(),
                    edges,
                    weights: None,
                    embedding: None,
                });
                offer(cand, &mut best);
            }
        }
    }

    let mut rng = rng(seed);
    for n in EXHAUSTIVE_MAX_N + 1..=max_n {
        for restart in 0..24 {
            let arcs: Vec<(NodeId, NodeId)> = if restart % 2 == 0 {
                (1..n).map(|c| (c, 0)).collect()
            } else {
                (1..n).map(|c| (c, rng.gen_range(0..c))).collect()
            };
            let pairs = non_tree_pairs(n, &arcs);
            let mut on: Vec<bool> = pairs.iter().map(|_| rng.gen_bool(0.3)).collect();
            let build = |on: &[bool]| InstanceParts {
                names: names(n),
                root: 0,
                tree_arcs: arcs.clone(),
                edges: pairs
                    .iter()
                    .zip(on)
                    .filter_map(|(&e, &b)| b.then_some(e))
                    .collect(),
                weights: None,
                embedding: None,
            };
            let mut current = evaluate(build(&on));
            for _ in 0..250 {
                let i = rng.gen_range(0..pairs.len());
                on[i] = !on[i];
                let cand = evaluate(build(&on));
                if cand.ratio() >= current.ratio() {
                    current = cand;
                } else {
                    on[i] = !on[i];
                }
            }
            offer(current, &mut best);
        }
    }
    best.expect("at least one instance is examined")
}
