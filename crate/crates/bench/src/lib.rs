//! Fixed instances shared by the benchmarks.

use treeaug_core::gen::{grid_instance, random_instance, random_planar_bfs, two_arm_instance, with_random_weights};
use treeaug_core::Instance;

/// Random instances with the given node count and edge probability.
pub fn random_set(n: usize, p: f64, count: u64) -> Vec<Instance> {
    (0..count).map(|seed| random_instance(n, p, seed)).collect()
}

/// Random instances small enough for the brute-force oracle.
pub fn oracle_set(count: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < count as usize {
        let inst = random_instance(10, 0.25, seed);
        if inst.edges().len() <= 16 {
            out.push(inst);
        }
        seed += 1;
    }
    out
}

pub fn two_arm_set(arm: usize, cross: usize, count: u64) -> Vec<Instance> {
    (0..count)
        .map(|seed| with_random_weights(&two_arm_instance(arm, arm, cross, 0.1, seed), seed))
        .collect()
}

/// Grids first, then random planar instances with BFS trees.
pub fn planar_set(rows: usize, cols: usize, count: u64) -> Vec<Instance> {
    let mut out = vec![grid_instance(rows, cols)];
    out.extend((0..count).map(|seed| random_planar_bfs(rows, cols, 0.8, 0.3, seed)));
    out
}
