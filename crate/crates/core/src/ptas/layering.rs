use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::instance::{Instance, NodeId};

/// Ok iff every node's tree depth equals its distance from the root in the
/// undirected graph of tree arcs and edges.
pub fn check_bfs_tree(inst: &Instance) -> Result<()> {
    let adj = inst.undirected_adjacency();
    let mut dist = vec![usize::MAX; inst.n()];
    dist[inst.root()] = 0;
    let mut queue = VecDeque::from([inst.root()]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    match (0..inst.n()).find(|&v| dist[v] != inst.depth(v)) {
        None => Ok(()),
        Some(v) => Err(Error::NotBfsTree(format!(
            "node {:?} has tree depth {} but graph distance {}",
            inst.name(v),
            inst.depth(v),
            dist[v]
        ))),
    }
}

/// Arcs and edges between levels `i` and `i + 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelCut {
    /// Tree arcs as `(child, parent)`.
    pub arcs: Vec<(NodeId, NodeId)>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Layering {
    pub level: Vec<usize>,
    pub d: usize,
    /// `cuts[i]` joins level `i` to level `i + 1`.
    pub cuts: Vec<LevelCut>,
}

impl Layering {
    pub fn new(inst: &Instance, d: usize) -> Result<Layering> {
        if d < 2 {
            return Err(Error::SliceParameter(d));
        }
        check_bfs_tree(inst)?;
        let level: Vec<usize> = (0..inst.n()).map(|v| inst.depth(v)).collect();
        let top = level.iter().copied().max().unwrap_or(0);
        let mut cuts = vec![LevelCut::default(); top];
        for (c, p) in inst.tree_arcs() {
            cuts[level[p]].arcs.push((c, p));
        }
        for (e, &(u, v)) in inst.edges().iter().enumerate() {
            if level[u] != level[v] {
                cuts[level[u].min(level[v])].edges.push(e);
            }
        }
        Ok(Layering { level, d, cuts })
    }

    /// Whether the cut between levels `i` and `i + 1` is removed in shift `k`.
    pub fn is_cut(&self, i: usize, k: usize) -> bool {
        i % self.d == k % self.d
    }

    /// Lower level of an arc or edge joining two levels.
    pub fn crossing(&self, u: NodeId, v: NodeId) -> Option<usize> {
        (self.level[u] != self.level[v]).then(|| self.level[u].min(self.level[v]))
    }

    /// Edges removed in shift `k`.
    pub fn cut_edges(&self, k: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .cuts
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.is_cut(i, k))
            .flat_map(|(_, c)| c.edges.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}
