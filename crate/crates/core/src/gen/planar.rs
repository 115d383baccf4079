use rand::Rng;

use super::{padded, rng};
use crate::instance::{Instance, InstanceParts, NodeId};

struct Grid {
    rows: usize,
    cols: usize,
}

impl Grid {
    fn id(&self, r: usize, c: usize) -> NodeId {
        r * self.cols + c
    }

    fn names(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(format!(
                    "{}{}",
                    padded("r", r, self.rows - 1),
                    padded("c", c, self.cols - 1)
                ));
            }
        }
        out
    }

    /// BFS tree from the corner: take the neighbour in the previous row when
    /// there is one, else the previous column.
    fn tree_arcs(&self) -> Vec<(NodeId, NodeId)> {
        let mut arcs = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if r > 0 {
                    arcs.push((self.id(r, c), self.id(r - 1, c)));
                } else if c > 0 {
                    arcs.push((self.id(r, c), self.id(r, c - 1)));
                }
            }
        }
        arcs
    }

    /// Grid edges that are not tree arcs.
    fn non_tree_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for r in 1..self.rows {
            for c in 0..self.cols.saturating_sub(1) {
                out.push((self.id(r, c), self.id(r, c + 1)));
            }
        }
        out
    }

    /// Counter-clockwise rotation of every node in the straight-line drawing
    /// with node `(r, c)` at `(c, -r)`.
    fn embedding(&self, arcs: &[(NodeId, NodeId)], edges: &[(NodeId, NodeId)]) -> Vec<Vec<NodeId>> {
        let n = self.rows * self.cols;
        let coord = |v: NodeId| ((v % self.cols) as f64, -((v / self.cols) as f64));
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in arcs.iter().chain(edges) {
            adj[a].push(b);
            adj[b].push(a);
        }
        for (v, nbrs) in adj.iter_mut().enumerate() {
            let (x0, y0) = coord(v);
            nbrs.sort_by(|&a, &b| {
                let (xa, ya) = coord(a);
                let (xb, yb) = coord(b);
                let ta = (ya - y0).atan2(xa - x0);
                let tb = (yb - y0).atan2(xb - x0);
                ta.total_cmp(&tb)
            });
        }
        adj
    }

    fn instance(&self, edges: Vec<(NodeId, NodeId)>) -> Instance {
        let arcs = self.tree_arcs();
        let embedding = self.embedding(&arcs, &edges);
        Instance::new(InstanceParts {
            names: self.names(),
            root: 0,
            tree_arcs: arcs,
            edges,
            weights: None,
            embedding: Some(embedding),
        })
        .expect("grid instance is valid")
    }
}

/// `rows × cols` grid with a BFS tree from the corner `(0, 0)`; the other
/// grid edges are the undirected edges. Carries a planar embedding.
pub fn grid_instance(rows: usize, cols: usize) -> Instance {
    assert!(rows >= 1 && cols >= 1, "grid needs at least one row and column");
    let g = Grid { rows, cols };
    let edges = g.non_tree_edges();
    g.instance(edges)
}

/// Grid-based planar instance whose corner BFS tree stays a BFS tree: each
/// non-tree grid edge is kept with probability `p_edge`, and each cell gets
/// its anti-diagonal (joining two nodes of the same BFS level) with
/// probability `p_diag`.
pub fn random_planar_bfs(rows: usize, cols: usize, p_edge: f64, p_diag: f64, seed: u64) -> Instance {
    assert!(rows >= 1 && cols >= 1, "grid needs at least one row and column");
    let mut rng = rng(seed);
    let g = Grid { rows, cols };
    let mut edges: Vec<_> = g
        .non_tree_edges()
        .into_iter()
        .filter(|_| rng.gen_bool(p_edge.clamp(0.0, 1.0)))
        .collect();
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            if rng.gen_bool(p_diag.clamp(0.0, 1.0)) {
                edges.push((g.id(r, c + 1), g.id(r + 1, c)));
            }
        }
    }
    g.instance(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one_is_a_single_node() {
        let g = grid_instance(1, 1);
        assert_eq!(g.n(), 1);
        assert!(g.edges().is_empty());
    }

    #[test]
    fn two_by_two_counts() {
        let g = grid_instance(2, 2);
        assert_eq!(g.n(), 4);
        assert_eq!(g.tree_arcs().count(), 3);
        assert_eq!(g.edges().len(), 1);
    }

    #[test]
    fn grid_embedding_lists_all_neighbours() {
        let g = grid_instance(3, 4);
        let adj = g.undirected_adjacency();
        let emb = g.embedding().unwrap();
        for v in 0..g.n() {
            let mut rot = emb[v].clone();
            rot.sort_unstable();
            assert_eq!(rot, adj[v]);
        }
    }
}
