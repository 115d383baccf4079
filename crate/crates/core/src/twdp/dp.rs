use std::collections::HashMap;

use crate::instance::{Direction, Instance, NodeId, Orientation};
use crate::weight::ScaledWeights;

use super::decomposition::TreeDecomposition;

/// One feasible `(order, covered)` pair of a bag.
///
/// `value` is the best scaled weight covered in the subtree below the bag
/// (bag included) when the bag's nodes sit in `orders[order]` and exactly
/// the positions in `covered` have an out-arc among the edges owned so far.
#[derive(Clone, Debug)]
pub struct DpEntry {
    pub order: u32,
    pub covered: u32,
    pub value: i64,
    /// Entry chosen in each child table, in `td.children` order.
    pub children: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct DpTable {
    /// Sorted bag nodes; positions below index into this.
    pub bag: Vec<NodeId>,
    /// Linear extensions of the tree arcs inside the bag, earliest first.
    pub orders: Vec<Vec<u8>>,
    /// Edges this bag orients: `(edge index, position u, position v)`.
    pub owned: Vec<(usize, u8, u8)>,
    pub entries: Vec<DpEntry>,
}

impl DpTable {
    pub fn covered_nodes(&self, entry: &DpEntry) -> Vec<NodeId> {
        (0..self.bag.len())
            .filter(|&i| entry.covered >> i & 1 == 1)
            .map(|i| self.bag[i])
            .collect()
    }

    /// Orientation of the owned edges under an order.
    pub fn orient(&self, order: u32, out: &mut Orientation) {
        let rank = ranks(&self.orders[order as usize]);
        for &(e, pu, pv) in &self.owned {
            let dir = if rank[pu as usize] < rank[pv as usize] {
                Direction::Forward
            } else {
                Direction::Backward
            };
            out.set(e, dir);
        }
    }
}

fn ranks(order: &[u8]) -> Vec<u8> {
    let mut rank = vec![0u8; order.len()];
    for (i, &p) in order.iter().enumerate() {
        rank[p as usize] = i as u8;
    }
    rank
}

/// Assigns every edge to the highest bag holding both endpoints (smallest
/// index on ties). Returns `None` for an edge no bag holds.
pub fn edge_owners(inst: &Instance, td: &TreeDecomposition) -> Vec<Option<usize>> {
    let depth = td.depths();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); inst.n()];
    for (b, bag) in td.bags().iter().enumerate() {
        for &v in bag {
            holders[v].push(b);
        }
    }
    inst.edges()
        .iter()
        .map(|&(u, v)| {
            holders[u]
                .iter()
                .copied()
                .filter(|&b| td.bag(b).binary_search(&v).is_ok())
                .min_by_key(|&b| (depth[b], b))
        })
        .collect()
}

/// Fills one table per bag, children before parents. The decomposition must
/// already be verified, with bags of at most 31 nodes.
pub fn build_tables(inst: &Instance, td: &TreeDecomposition, weights: &ScaledWeights) -> Vec<DpTable> {
    let owners = edge_owners(inst, td);
    let mut owned: Vec<Vec<usize>> = vec![Vec::new(); td.len()];
    for (e, owner) in owners.iter().enumerate() {
        owned[owner.expect("verified decomposition holds every edge")].push(e);
    }
    let mut tables: Vec<Option<DpTable>> = vec![None; td.len()];
    for b in td.post_order() {
        let kids: Vec<&DpTable> = td
            .children(b)
            .iter()
            .map(|&c| tables[c].as_ref().expect("child filled first"))
            .collect();
        let table = fill_bag(inst, td.bag(b), &owned[b], &kids, weights);
        tables[b] = Some(table);
    }
    tables.into_iter().map(|t| t.expect("every bag filled")).collect()
}

/// Best entry of a child table per (order on the shared nodes, covered
/// shared nodes), its value net of the shared nodes it covers.
struct Projection {
    /// child position -> parent position
    shared: Vec<Option<u8>>,
    /// parent positions present in the child, as a bitmask
    shared_mask: u32,
    by_order: HashMap<Vec<u8>, Vec<(u32, i64, u32)>>,
}

fn project(child: &DpTable, parent_bag: &[NodeId], weights: &ScaledWeights) -> Projection {
    let shared: Vec<Option<u8>> = child
        .bag
        .iter()
        .map(|v| parent_bag.binary_search(v).ok().map(|p| p as u8))
        .collect();
    let shared_mask = shared.iter().flatten().fold(0u32, |m, &p| m | 1 << p);
    let mut best: HashMap<(Vec<u8>, u32), (i64, u32)> = HashMap::new();
    let mut first_seen: Vec<(Vec<u8>, u32)> = Vec::new();
    for (idx, entry) in child.entries.iter().enumerate() {
        let key_order: Vec<u8> = child.orders[entry.order as usize]
            .iter()
            .filter_map(|&p| shared[p as usize])
            .collect();
        let mut mask = 0u32;
        let mut lost = 0i64;
        for (cp, sp) in shared.iter().enumerate() {
            if let Some(sp) = sp {
                if entry.covered >> cp & 1 == 1 {
                    mask |= 1 << sp;
                    lost += weights.units[child.bag[cp]];
                }
            }
        }
        let contrib = entry.value - lost;
        let key = (key_order, mask);
        match best.get_mut(&key) {
            Some(slot) => {
                if contrib > slot.0 {
                    *slot = (contrib, idx as u32);
                }
            }
            None => {
                first_seen.push(key.clone());
                best.insert(key, (contrib, idx as u32));
            }
        }
    }
    let mut by_order: HashMap<Vec<u8>, Vec<(u32, i64, u32)>> = HashMap::new();
    for key in first_seen {
        let (v, i) = best[&key];
        by_order.entry(key.0).or_default().push((key.1, v, i));
    }
    Projection {
        shared,
        shared_mask,
        by_order,
    }
}

fn linear_extensions(size: usize, before: &[(u8, u8)]) -> Vec<Vec<u8>> {
    // must[p]: positions that have to be placed before p
    let mut must = vec![0u32; size];
    for &(a, b) in before {
        must[b as usize] |= 1 << a;
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    extend(size, &must, 0, &mut current, &mut out);
    out
}

fn extend(size: usize, must: &[u32], placed: u32, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if current.len() == size {
        out.push(current.clone());
        return;
    }
    for p in 0..size {
        if placed >> p & 1 == 0 && must[p] & !placed == 0 {
            current.push(p as u8);
            extend(size, must, placed | 1 << p, current, out);
            current.pop();
        }
    }
}

fn fill_bag(
    inst: &Instance,
    bag: &[NodeId],
    owned_edges: &[usize],
    kids: &[&DpTable],
    weights: &ScaledWeights,
) -> DpTable {
    let s = bag.len();
    assert!(s <= 31, "bag of {s} nodes");
    let pos = |v: NodeId| bag.binary_search(&v).ok().map(|p| p as u8);
    let before: Vec<(u8, u8)> = bag
        .iter()
        .filter_map(|&c| {
            let p = inst.parent(c)?;
            Some((pos(c)?, pos(p)?))
        })
        .collect();
    let owned: Vec<(usize, u8, u8)> = owned_edges
        .iter()
        .map(|&e| {
            let (u, v) = inst.edge(e);
            (e, pos(u).expect("owner holds u"), pos(v).expect("owner holds v"))
        })
        .collect();
    let orders = linear_extensions(s, &before);
    let projections: Vec<Projection> = kids.iter().map(|k| project(k, bag, weights)).collect();
    let bag_units: Vec<i64> = bag.iter().map(|&v| weights.units[v]).collect();
    let mask_weight = |m: u32| -> i64 {
        (0..s).filter(|&i| m >> i & 1 == 1).map(|i| bag_units[i]).sum()
    };

    let mut entries = Vec::new();
    let full = 1usize << s;
    'orders: for (oi, order) in orders.iter().enumerate() {
        let rank = ranks(order);
        let mut own = 0u32;
        for &(_, pu, pv) in &owned {
            own |= if rank[pu as usize] < rank[pv as usize] {
                1 << pu
            } else {
                1 << pv
            };
        }
        let mut states: Vec<Option<(i64, Vec<u32>)>> = vec![None; full];
        states[own as usize] = Some((0, Vec::new()));
        for proj in &projections {
            let key: Vec<u8> = order
                .iter()
                .copied()
                .filter(|&p| proj.shared_mask >> p & 1 == 1)
                .collect();
            let Some(options) = proj.by_order.get(&key) else {
                continue 'orders;
            };
            let mut next: Vec<Option<(i64, Vec<u32>)>> = vec![None; full];
            for (mask, state) in states.iter().enumerate() {
                let Some((val, picks)) = state else { continue };
                for &(m2, cv, ci) in options {
                    let nm = (mask as u32 | m2) as usize;
                    let nv = val + cv;
                    if next[nm].as_ref().is_none_or(|(best, _)| nv > *best) {
                        let mut p = picks.clone();
                        p.push(ci);
                        next[nm] = Some((nv, p));
                    }
                }
            }
            states = next;
        }
        for (mask, state) in states.into_iter().enumerate() {
            if let Some((val, picks)) = state {
                entries.push(DpEntry {
                    order: oi as u32,
                    covered: mask as u32,
                    value: val + mask_weight(mask as u32),
                    children: picks,
                });
            }
        }
    }
    debug_assert!(projections.iter().all(|p| p.shared.len() <= 31));
    DpTable {
        bag: bag.to_vec(),
        orders,
        owned,
        entries,
    }
}

/// Partial orientation of every edge owned in the subtree of `bag`, read off
/// the back-pointers of `entry`.
pub fn witness(
    td: &TreeDecomposition,
    tables: &[DpTable],
    bag: usize,
    entry: u32,
    edge_count: usize,
) -> Orientation {
    let mut out = Orientation::empty(edge_count);
    let mut stack = vec![(bag, entry)];
    while let Some((b, e)) = stack.pop() {
        let chosen = &tables[b].entries[e as usize];
        tables[b].orient(chosen.order, &mut out);
        for (&c, &ce) in td.children(b).iter().zip(&chosen.children) {
            stack.push((c, ce));
        }
    }
    out
}
