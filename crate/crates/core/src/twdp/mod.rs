//! Exact dynamic program over a tree decomposition of `T ∪ E`.
//!
//! Each bag guesses a relative order of its nodes and which of them are
//! covered; an edge is oriented by the order in the highest bag holding
//! both its endpoints.

mod decomposition;
mod dp;
mod heuristic;

pub use decomposition::{verify_decomposition, DecompositionViolation, TreeDecomposition};
pub use dp::{build_tables, edge_owners, witness, DpEntry, DpTable};
pub use heuristic::heuristic_decomposition;

use crate::error::{Error, Result};
use crate::instance::{complete_orientation, coverage, CoverageReport, Instance, Orientation};

pub const DEFAULT_WIDTH_CAP: usize = 6;

/// Solves the instance exactly on the given decomposition.
pub fn solve_twdp(
    inst: &Instance,
    td: &TreeDecomposition,
    width_cap: usize,
) -> Result<(Orientation, CoverageReport)> {
    let violations = verify_decomposition(inst, td);
    if !violations.is_empty() {
        return Err(Error::InvalidDecomposition(violations));
    }
    if td.width() > width_cap {
        return Err(Error::WidthOverCap {
            width: td.width(),
            cap: width_cap,
        });
    }
    let weights = inst.scaled_weights()?;
    let tables = build_tables(inst, td, &weights);
    let root = td.root();
    let (best, entry) = tables[root]
        .entries
        .iter()
        .enumerate()
        .fold(None::<(usize, i64)>, |acc, (i, e)| match acc {
            Some((_, v)) if v >= e.value => acc,
            _ => Some((i, e.value)),
        })
        .map(|(i, v)| (v, i as u32))
        .ok_or(Error::Infeasible)?;
    let partial = witness(td, &tables, root, entry, inst.edges().len());
    let total = complete_orientation(inst, &partial)?;
    let report = coverage(inst, &total)?;
    debug_assert_eq!(report.value, weights.to_weight(best));
    log::debug!(
        "twdp: {} bags, width {}, value {}",
        td.len(),
        td.width(),
        report.value
    );
    Ok((total, report))
}

/// Runs the DP on the min-fill decomposition.
pub fn solve_twdp_auto(inst: &Instance, width_cap: usize) -> Result<(Orientation, CoverageReport)> {
    solve_twdp(inst, &heuristic_decomposition(inst), width_cap)
}
