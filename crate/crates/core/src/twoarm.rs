//! Exact dynamic program for trees made of two directed root paths.

use std::fmt;

use crate::error::Result;
use crate::instance::{complete_orientation, coverage, CoverageReport, Direction, Instance, NodeId, Orientation};
use crate::weight::ScaledWeights;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossEdge {
    pub edge: usize,
    /// Position on the left arm, 1-based.
    pub left: usize,
    /// Position on the right arm, 1-based.
    pub right: usize,
}

/// A recognized two-arm instance. Arms run from the root (position 0)
/// to the leaf.
#[derive(Clone, Debug)]
pub struct TwoArmInstance<'a> {
    pub inst: &'a Instance,
    pub left: Vec<NodeId>,
    pub right: Vec<NodeId>,
    /// Sorted by left then right position.
    pub cross: Vec<CrossEdge>,
    /// Edges inside one arm (root included) with their forced direction.
    pub back: Vec<(usize, Direction)>,
    /// Scaled weight of each node not already covered by a back edge.
    pub delta: Vec<i64>,
    pub weights: ScaledWeights,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotTwoArm(pub String);

impl fmt::Display for NotTwoArm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Accepts trees whose root has at most two children and whose other nodes
/// have at most one. The left arm starts at the root's first child by
/// identifier; a path has an empty right arm.
pub fn recognize_two_arm(inst: &Instance) -> std::result::Result<TwoArmInstance<'_>, NotTwoArm> {
    let root = inst.root();
    if inst.children(root).len() > 2 {
        return Err(NotTwoArm(format!(
            "root {:?} has {} children",
            inst.name(root),
            inst.children(root).len()
        )));
    }
    if let Some(v) = (0..inst.n()).find(|&v| v != root && inst.children(v).len() > 1) {
        return Err(NotTwoArm(format!(
            "node {:?} has {} children",
            inst.name(v),
            inst.children(v).len()
        )));
    }
    let arm = |start: Option<NodeId>| {
        let mut out = vec![root];
        let mut cur = start;
        while let Some(v) = cur {
            out.push(v);
            cur = inst.children(v).first().copied();
        }
        out
    };
    let left = arm(inst.children(root).first().copied());
    let right = arm(inst.children(root).get(1).copied());
    // side[v] = (arm, position); the root counts as both arms.
    let mut side = vec![(0u8, 0usize); inst.n()];
    for (i, &v) in left.iter().enumerate().skip(1) {
        side[v] = (1, i);
    }
    for (i, &v) in right.iter().enumerate().skip(1) {
        side[v] = (2, i);
    }
    let weights = inst
        .scaled_weights()
        .map_err(|e| NotTwoArm(format!("weights: {e}")))?;
    let mut cross = Vec::new();
    let mut back = Vec::new();
    let mut delta = weights.units.clone();
    delta[root] = 0;
    for (e, &(u, v)) in inst.edges().iter().enumerate() {
        let (su, sv) = (side[u], side[v]);
        if su.0 != 0 && sv.0 != 0 && su.0 != sv.0 {
            let (l, r) = if su.0 == 1 { (su.1, sv.1) } else { (sv.1, su.1) };
            cross.push(CrossEdge { edge: e, left: l, right: r });
        } else {
            // same arm, or touching the root: the deeper end points up
            let dir = if su.1 > sv.1 {
                delta[u] = 0;
                Direction::Forward
            } else {
                delta[v] = 0;
                Direction::Backward
            };
            back.push((e, dir));
        }
    }
    cross.sort_by_key(|c| (c.left, c.right));
    Ok(TwoArmInstance {
        inst,
        left,
        right,
        cross,
        back,
        delta,
        weights,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Choice {
    Empty,
    Skip,
    /// e_k left to right, rest from column t.
    Rightward(usize),
    /// e_k right to left, rest from row t.
    Leftward(usize),
}

/// `value[j][k]`: best extra coverage on the first `k` cross edges whose
/// right position is below `j`, for `j = 1..=n_r + 1` (row 0 unused).
#[derive(Clone, Debug)]
pub struct TwoArmTable {
    pub value: Vec<Vec<i64>>,
    pub choice: Vec<Vec<Choice>>,
}

pub fn fill_table(ta: &TwoArmInstance<'_>) -> TwoArmTable {
    let m = ta.cross.len();
    let rows = ta.right.len() + 1; // rows 0..=n_r+1
    let mut value = vec![vec![0i64; m + 1]; rows];
    let mut choice = vec![vec![Choice::Empty; m + 1]; rows];
    let delta_left = |i: usize| ta.delta[ta.left[i]];
    let delta_right = |i: usize| ta.delta[ta.right[i]];
    // last[k] = largest t < k with left(e_t) < left(e_k), 1-based, 0 if none
    let mut last = vec![0usize; m + 1];
    for k in 1..=m {
        let mut t = k - 1;
        while t > 0 && ta.cross[t - 1].left == ta.cross[k - 1].left {
            t -= 1;
        }
        last[k] = t;
    }
    for k in 1..=m {
        let ek = &ta.cross[k - 1];
        for j in 1..rows {
            if j <= ek.right {
                value[j][k] = value[j][k - 1];
                choice[j][k] = Choice::Skip;
                continue;
            }
            let t = last[k];
            let rightward = value[j][t] + delta_left(ek.left);
            let tr = ek.right;
            let mut ends: Vec<usize> = ta.cross[..k]
                .iter()
                .filter(|e| e.right >= tr && e.right < j)
                .map(|e| e.right)
                .collect();
            ends.sort_unstable();
            ends.dedup();
            let leftward = value[tr][k] + ends.iter().map(|&r| delta_right(r)).sum::<i64>();
            if rightward >= leftward {
                value[j][k] = rightward;
                choice[j][k] = Choice::Rightward(t);
            } else {
                value[j][k] = leftward;
                choice[j][k] = Choice::Leftward(tr);
            }
        }
    }
    TwoArmTable { value, choice }
}

/// Orientation of the cross edges counted in cell `(j, k)`.
pub fn cell_witness(ta: &TwoArmInstance<'_>, table: &TwoArmTable, j: usize, k: usize) -> Orientation {
    let mut out = Orientation::for_instance(ta.inst);
    let (mut j, mut k) = (j, k);
    while k > 0 {
        match table.choice[j][k] {
            Choice::Empty => break,
            Choice::Skip => k -= 1,
            Choice::Rightward(t) => {
                for e in &ta.cross[t..k] {
                    if e.right < j {
                        out.set_from(ta.inst, e.edge, ta.left[e.left]);
                    }
                }
                k = t;
            }
            Choice::Leftward(t) => {
                for e in &ta.cross[..k] {
                    if e.right >= t && e.right < j {
                        out.set_from(ta.inst, e.edge, ta.right[e.right]);
                    }
                }
                j = t;
            }
        }
    }
    out
}

pub fn solve_two_arm(ta: &TwoArmInstance<'_>) -> Result<(Orientation, CoverageReport)> {
    let table = fill_table(ta);
    let j = ta.right.len();
    let k = ta.cross.len();
    let mut o = cell_witness(ta, &table, j, k);
    for &(e, dir) in &ta.back {
        o.set(e, dir);
    }
    let total = complete_orientation(ta.inst, &o)?;
    let report = coverage(ta.inst, &total)?;
    log::debug!("twoarm: {} cross edges, value {}", k, report.value);
    Ok((total, report))
}
