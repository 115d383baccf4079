use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashSet, VecDeque};

use rand::Rng;

use super::{padded, rng};
use crate::instance::{Instance, InstanceParts, NodeId};
use crate::weight::Weight;

/// Undirected labeled tree decoded from a uniformly random Prüfer sequence.
fn random_tree(n: usize, rng: &mut impl Rng) -> Vec<(NodeId, NodeId)> {
    if n < 2 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(0, 1)];
    }
    let seq: Vec<NodeId> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &seq {
        degree[x] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<NodeId>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &seq {
        let Reverse(leaf) = leaves.pop().expect("Prüfer decoding keeps a leaf");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.push(Reverse(x));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    edges
}

/// Orients an undirected tree toward `root`, returning `(child, parent)` arcs.
fn orient_toward(n: usize, tree: &[(NodeId, NodeId)], root: NodeId) -> Vec<(NodeId, NodeId)> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in tree {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut arcs = Vec::with_capacity(n.saturating_sub(1));
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                arcs.push((w, v));
                queue.push_back(w);
            }
        }
    }
    arcs.sort_unstable();
    arcs
}

/// Uniform random labeled arborescence on `n` nodes toward a uniformly
/// chosen root; every other node pair becomes an edge with probability `p`.
pub fn random_instance(n: usize, p: f64, seed: u64) -> Instance {
    assert!(n >= 1, "random_instance needs at least one node");
    let mut rng = rng(seed);
    let tree = random_tree(n, &mut rng);
    let root = rng.gen_range(0..n);
    let arcs = orient_toward(n, &tree, root);
    let in_tree: HashSet<(NodeId, NodeId)> =
        tree.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !in_tree.contains(&(u, v)) && rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Instance::new(InstanceParts {
        names: (0..n).map(|i| padded("v", i, n - 1)).collect(),
        root,
        tree_arcs: arcs,
        edges,
        weights: None,
        embedding: None,
    })
    .expect("random instance is valid")
}

/// Replaces the weights with random positive rationals `a/b`,
/// `a ∈ 1..=20`, `b ∈ 1..=6`.
pub fn with_random_weights(inst: &Instance, seed: u64) -> Instance {
    let mut rng = rng(seed ^ 0x5eed_0f3e16);
    let ws = (0..inst.n())
        .map(|_| Weight::new(rng.gen_range(1..=20), rng.gen_range(1..=6)))
        .collect();
    inst.with_weights(Some(ws)).expect("positive weights are valid")
}

/// Two root paths of lengths `n_l` and `n_r` (root `o`, left arm `a…`,
/// right arm `b…`), up to `m_cross` distinct random cross edges, and each
/// non-adjacent pair inside an arm (root included) as a back edge with
/// probability `p_back`.
pub fn two_arm_instance(n_l: usize, n_r: usize, m_cross: usize, p_back: f64, seed: u64) -> Instance {
    let mut rng = rng(seed);
    let mut names = vec!["o".to_string()];
    let left: Vec<NodeId> = std::iter::once(0)
        .chain((1..=n_l).map(|i| {
            names.push(padded("a", i, n_l));
            names.len() - 1
        }))
        .collect();
    let right: Vec<NodeId> = std::iter::once(0)
        .chain((1..=n_r).map(|i| {
            names.push(padded("b", i, n_r));
            names.len() - 1
        }))
        .collect();
    let mut arcs = Vec::new();
    for arm in [&left, &right] {
        for i in 1..arm.len() {
            arcs.push((arm[i], arm[i - 1]));
        }
    }
    let mut cross = BTreeSet::new();
    if n_l > 0 && n_r > 0 {
        for _ in 0..m_cross {
            cross.insert((rng.gen_range(1..=n_l), rng.gen_range(1..=n_r)));
        }
    }
    let mut edges: Vec<(NodeId, NodeId)> = cross.into_iter().map(|(i, j)| (left[i], right[j])).collect();
    for arm in [&left, &right] {
        for deep in 2..arm.len() {
            for high in 0..deep - 1 {
                if rng.gen_bool(p_back.clamp(0.0, 1.0)) {
                    edges.push((arm[deep], arm[high]));
                }
            }
        }
    }
    Instance::new(InstanceParts {
        names,
        root: 0,
        tree_arcs: arcs,
        edges,
        weights: None,
        embedding: None,
    })
    .expect("two-arm instance is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::InstanceDoc;

    #[test]
    fn zero_probability_gives_bare_tree() {
        let inst = random_instance(9, 0.0, 1);
        assert!(inst.edges().is_empty());
        assert_eq!(inst.tree_arcs().count(), 8);
    }

    #[test]
    fn same_seed_same_bytes() {
        let a = InstanceDoc::from_instance(&random_instance(10, 0.3, 42)).to_json();
        let b = InstanceDoc::from_instance(&random_instance(10, 0.3, 42)).to_json();
        assert_eq!(a, b);
        let c = InstanceDoc::from_instance(&random_instance(10, 0.3, 43)).to_json();
        assert_ne!(a, c);
    }

    #[test]
    fn generated_instances_validate() {
        for seed in 0..50 {
            let inst = random_instance(1 + seed as usize % 12, 0.3, seed);
            let doc = InstanceDoc::from_instance(&inst);
            assert!(doc.validate().is_empty());
        }
    }

    #[test]
    fn bare_two_arm_tree() {
        let inst = two_arm_instance(3, 2, 0, 0.0, 7);
        assert_eq!(inst.n(), 6);
        assert!(inst.edges().is_empty());
        assert_eq!(inst.children(inst.root()).len(), 2);
        assert_eq!(
            InstanceDoc::from_instance(&two_arm_instance(4, 3, 5, 0.3, 9)).to_json(),
            InstanceDoc::from_instance(&two_arm_instance(4, 3, 5, 0.3, 9)).to_json()
        );
    }

    #[test]
    fn random_weights_are_positive() {
        let inst = with_random_weights(&random_instance(8, 0.3, 5), 5);
        assert!(inst.is_weighted());
        assert!(inst.weights().iter().all(|w| w.is_positive()));
    }
}
