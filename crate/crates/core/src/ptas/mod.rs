//! Layered shifting scheme for planar instances whose tree is a BFS tree.
//!
//! For each shift `k`, the arcs and edges between levels `i` and `i + 1`
//! with `i ≡ k (mod d)` are removed. Every remaining component becomes a
//! shallow slice that is solved exactly; removed edges point toward the
//! root like the tree arcs they sit beside.

mod baker;
mod layering;
mod map;
mod slice;

pub use layering::{check_bfs_tree, Layering, LevelCut};
pub use slice::{build_slices, Slice};

use crate::error::{Error, Result};
use crate::instance::{complete_orientation, coverage, CoverageReport, Instance, Orientation};
use crate::twdp::{heuristic_decomposition, solve_twdp, TreeDecomposition};
use crate::weight::Weight;

use map::PlanarMap;

pub const DEFAULT_D: usize = 4;

/// Outcome of one shift.
#[derive(Clone, Debug)]
pub struct ShiftOutcome {
    pub k: usize,
    pub orientation: Orientation,
    pub report: CoverageReport,
    pub slices: usize,
    /// Largest decomposition width used on a slice.
    pub width: usize,
}

#[derive(Clone, Debug)]
pub struct PtasOutcome {
    /// Index into `shifts` of the best one (smallest `k` among ties).
    pub best: usize,
    pub shifts: Vec<ShiftOutcome>,
}

impl PtasOutcome {
    pub fn best(&self) -> &ShiftOutcome {
        &self.shifts[self.best]
    }
}

/// Verified rotation system of the whole instance, if it has one.
fn instance_map(inst: &Instance, embedding_required: bool) -> Result<Option<PlanarMap>> {
    let Some(rot) = inst.embedding() else {
        if embedding_required {
            return Err(Error::Embedding("instance carries no embedding".into()));
        }
        return Ok(None);
    };
    let map = PlanarMap::from_rotations(rot).map_err(Error::Embedding)?;
    let adj = inst.undirected_adjacency();
    for (v, nbrs) in adj.iter().enumerate() {
        let mut listed = rot[v].clone();
        listed.sort_unstable();
        if &listed != nbrs {
            return Err(Error::Embedding(format!(
                "rotation of {:?} does not list exactly its neighbours",
                inst.name(v)
            )));
        }
    }
    map.check_euler().map_err(Error::Embedding)?;
    Ok(Some(map))
}

/// Decomposition of a slice from the instance's embedding, or from min-fill
/// elimination when there is none. Without an embedding the width must not
/// exceed `3d`.
pub fn shallow_decomposition(inst: &Instance, lay: &Layering, slice: &Slice) -> Result<TreeDecomposition> {
    match instance_map(inst, false)? {
        Some(full) => {
            let m = slice::slice_map(inst, &full, lay, slice);
            baker::baker_decomposition(&slice.instance, &m)
        }
        None => {
            let td = heuristic_decomposition(&slice.instance);
            if td.width() > 3 * lay.d {
                return Err(Error::WidthOverCap {
                    width: td.width(),
                    cap: 3 * lay.d,
                });
            }
            Ok(td)
        }
    }
}

fn solve_shift(
    inst: &Instance,
    lay: &Layering,
    full: Option<&PlanarMap>,
    k: usize,
    width_cap: usize,
) -> Result<ShiftOutcome> {
    let slices = build_slices(inst, lay, k);
    let mut o = Orientation::for_instance(inst);
    let mut width = 0;
    for s in &slices {
        debug_assert!(s.depth() <= lay.d);
        // Baker's bags can be wider than min-fill's; use the narrower.
        let mut td = heuristic_decomposition(&s.instance);
        if let Some(full) = full {
            let m = slice::slice_map(inst, full, lay, s);
            let shallow = baker::baker_decomposition(&s.instance, &m)?;
            if shallow.width() <= td.width() {
                td = shallow;
            }
        }
        width = width.max(td.width());
        let (so, _) = solve_twdp(&s.instance, &td, width_cap)?;
        for (i, dir) in so.assigned() {
            o.set(s.edge_origin[i], dir);
        }
    }
    for e in lay.cut_edges(k) {
        let (u, v) = inst.edge(e);
        let low = if lay.level[u] > lay.level[v] { u } else { v };
        o.set_from(inst, e, low);
    }
    let o = complete_orientation(inst, &o)
        .map_err(|_| Error::Uncertified(format!("shift {k} produced a directed cycle")))?;
    let report = coverage(inst, &o)
        .map_err(|_| Error::Uncertified(format!("shift {k} produced a directed cycle")))?;
    Ok(ShiftOutcome {
        k,
        orientation: o,
        report,
        slices: slices.len(),
        width,
    })
}

/// Runs every shift `k = 1..=d` and keeps the best.
pub fn solve_ptas(inst: &Instance, d: usize, width_cap: usize, embedding_required: bool) -> Result<PtasOutcome> {
    let lay = Layering::new(inst, d)?;
    let full = instance_map(inst, embedding_required)?;
    let shifts = (1..=d)
        .map(|k| solve_shift(inst, &lay, full.as_ref(), k, width_cap))
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (i, s) in shifts.iter().enumerate() {
        if s.report.value > shifts[best].report.value {
            best = i;
        }
    }
    log::debug!(
        "ptas d={d}: shift values {:?}, best k={}",
        shifts.iter().map(|s| s.report.value.to_string()).collect::<Vec<_>>(),
        shifts[best].k
    );
    Ok(PtasOutcome { best, shifts })
}

/// `1 − 1/d`.
pub fn guarantee(d: usize) -> Weight {
    Weight::new(d as i64 - 1, d as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{grid_instance, random_instance, random_planar_bfs, with_random_weights};
    use crate::oracle::{solve_exact, solve_exact_by_orders, DEFAULT_EDGE_LIMIT, DEFAULT_STATE_LIMIT};
    use crate::twdp::verify_decomposition;
    use crate::twdp::DEFAULT_WIDTH_CAP;

    #[test]
    fn tree_without_edges_scores_zero() {
        let inst = random_instance(10, 0.0, 4);
        let out = solve_ptas(&inst, 3, DEFAULT_WIDTH_CAP, false).unwrap();
        assert!(out.shifts.iter().all(|s| s.report.value == Weight::ZERO));
    }

    #[test]
    fn non_bfs_tree_is_rejected() {
        let inst = crate::instance::tests::build(&["d", "a", "b"], "d", &[("a", "d"), ("b", "a")], &[("b", "d")]);
        assert!(matches!(solve_ptas(&inst, 2, 6, false), Err(Error::NotBfsTree(_))));
    }

    #[test]
    fn slices_are_shallow_and_cover_all_nodes() {
        let inst = grid_instance(5, 4);
        let lay = Layering::new(&inst, 3).unwrap();
        for k in 1..=3 {
            let slices = build_slices(&inst, &lay, k);
            let total: usize = slices.iter().map(|s| s.nodes.len()).sum();
            assert_eq!(total, inst.n());
            for s in &slices {
                assert!(s.depth() <= 3);
                assert_eq!(s.instance.weight(s.artificial_root()), Weight::ZERO);
            }
        }
    }

    #[test]
    fn baker_bags_are_valid_and_within_3d() {
        for (rows, cols) in [(3, 3), (3, 6), (4, 4), (5, 5)] {
            let inst = grid_instance(rows, cols);
            for d in 2..=4 {
                let lay = Layering::new(&inst, d).unwrap();
                for k in 1..=d {
                    for s in build_slices(&inst, &lay, k) {
                        let td = shallow_decomposition(&inst, &lay, &s).unwrap();
                        assert!(verify_decomposition(&s.instance, &td).is_empty());
                        assert!(td.width() <= 3 * d, "{rows}x{cols} d={d} k={k} width {}", td.width());
                    }
                }
            }
        }
    }

    #[test]
    fn random_planar_maps_decompose() {
        for seed in 0..40 {
            let inst = random_planar_bfs(4, 4, 0.6, 0.4, seed);
            let lay = Layering::new(&inst, 3).unwrap();
            for k in 1..=3 {
                for s in build_slices(&inst, &lay, k) {
                    let td = shallow_decomposition(&inst, &lay, &s).unwrap();
                    assert!(td.width() <= 9);
                }
            }
        }
    }

    #[test]
    fn within_guarantee_of_oracle() {
        for seed in 0..40 {
            let inst = random_planar_bfs(3, 4, 0.6, 0.3, seed);
            let opt = if inst.edges().len() <= DEFAULT_EDGE_LIMIT {
                solve_exact(&inst, DEFAULT_EDGE_LIMIT).unwrap().1.value
            } else {
                solve_exact_by_orders(&inst, DEFAULT_STATE_LIMIT).unwrap().1.value
            };
            for d in 2..=4 {
                let out = solve_ptas(&inst, d, DEFAULT_WIDTH_CAP, true).unwrap();
                for s in &out.shifts {
                    assert!(crate::is_acyclic(&inst, &s.orientation));
                }
                assert!(out.best().report.value >= guarantee(d) * opt, "seed {seed} d={d}");
                assert!(out.best().report.value <= opt);
            }
        }
    }

    #[test]
    fn weighted_grid_within_guarantee() {
        let inst = with_random_weights(&grid_instance(3, 4), 9);
        let opt = solve_exact(&inst, DEFAULT_EDGE_LIMIT).unwrap().1.value;
        let out = solve_ptas(&inst, 3, DEFAULT_WIDTH_CAP, true).unwrap();
        assert!(out.best().report.value >= guarantee(3) * opt);
    }

    #[test]
    fn missing_embedding_is_an_error_when_required() {
        let inst = grid_instance(2, 3).with_weights(None).unwrap();
        let mut parts = inst.to_parts();
        parts.embedding = None;
        let bare = Instance::new(parts).unwrap();
        assert!(matches!(solve_ptas(&bare, 2, 6, true), Err(Error::Embedding(_))));
        assert!(solve_ptas(&bare, 2, 6, false).is_ok());
    }

    #[test]
    fn bad_rotation_is_rejected() {
        let mut parts = grid_instance(3, 3).to_parts();
        let emb = parts.embedding.as_mut().unwrap();
        // node (1,1) has four neighbours; swapping two breaks planarity
        emb[4].swap(0, 1);
        let inst = Instance::new(parts).unwrap();
        assert!(matches!(solve_ptas(&inst, 2, 6, false), Err(Error::Embedding(_))));
    }
}
