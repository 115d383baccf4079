use std::collections::BTreeSet;

use crate::instance::{Instance, NodeId};

use super::decomposition::TreeDecomposition;

/// Min-fill elimination on the undirected graph of tree arcs and edges,
/// binarized. Ties go to the smaller node index.
pub fn heuristic_decomposition(inst: &Instance) -> TreeDecomposition {
    let n = inst.n();
    let mut adj: Vec<BTreeSet<NodeId>> = inst
        .undirected_adjacency()
        .into_iter()
        .map(|a| a.into_iter().collect())
        .collect();
    let mut eliminated = vec![false; n];
    let mut position = vec![usize::MAX; n];
    let mut bags: Vec<Vec<NodeId>> = Vec::with_capacity(n);
    let mut order = Vec::with_capacity(n);

    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !eliminated[v])
            .min_by_key(|&v| (fill_in(&adj, v), adj[v].len(), v))
            .expect("a node remains");
        let nbrs: Vec<NodeId> = adj[v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            adj[a].remove(&v);
        }
        let mut bag = nbrs;
        bag.push(v);
        bags.push(bag);
        eliminated[v] = true;
        position[v] = step;
        order.push(v);
    }

    // The bag of v hangs below the bag of its earliest-eliminated later
    // neighbour; disconnected pieces hang below the last bag.
    let last = n - 1;
    let parent: Vec<Option<usize>> = (0..n)
        .map(|step| {
            if step == last {
                return None;
            }
            let v = order[step];
            let up = bags[step]
                .iter()
                .filter(|&&u| u != v)
                .map(|&u| position[u])
                .min();
            Some(up.unwrap_or(last))
        })
        .collect();
    TreeDecomposition::from_parents(bags, parent)
        .expect("elimination yields a tree")
        .binarize()
}

fn fill_in(adj: &[BTreeSet<NodeId>], v: NodeId) -> usize {
    let nbrs: Vec<NodeId> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}
