use std::collections::{BTreeMap, HashMap};

use crate::instance::{Instance, InstanceParts, NodeId};
use crate::weight::Weight;

use super::layering::Layering;
use super::map::PlanarMap;

/// One connected component left after removing a shift's cuts, as an
/// instance of its own: the component's nodes (in increasing original id)
/// followed by an artificial root of weight 0.
#[derive(Clone, Debug)]
pub struct Slice {
    pub nodes: Vec<NodeId>,
    pub band_start: usize,
    pub instance: Instance,
    /// Original index of each slice edge.
    pub edge_origin: Vec<usize>,
}

impl Slice {
    pub fn artificial_root(&self) -> NodeId {
        self.nodes.len()
    }

    /// Depth of the slice tree.
    pub fn depth(&self) -> usize {
        (0..self.instance.n()).map(|v| self.instance.depth(v)).max().unwrap_or(0)
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

fn fresh_root_name(inst: &Instance) -> String {
    let mut name = String::from("root*");
    while inst.index_of(&name).is_some() {
        name.push('*');
    }
    name
}

/// Slices of shift `k`, ordered by their smallest node.
pub fn build_slices(inst: &Instance, lay: &Layering, k: usize) -> Vec<Slice> {
    let n = inst.n();
    let mut uf: Vec<usize> = (0..n).collect();
    let kept = |u: NodeId, v: NodeId| lay.crossing(u, v).is_none_or(|i| !lay.is_cut(i, k));
    let pairs = inst.tree_arcs().chain(inst.edges().iter().copied());
    for (u, v) in pairs {
        if kept(u, v) {
            let (a, b) = (find(&mut uf, u), find(&mut uf, v));
            if a != b {
                uf[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<NodeId>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut uf, v);
        groups.entry(r).or_default().push(v);
    }
    let root_name = fresh_root_name(inst);
    let mut edges_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (e, &(u, v)) in inst.edges().iter().enumerate() {
        let (a, b) = (find(&mut uf, u), find(&mut uf, v));
        if a == b {
            edges_of.entry(a).or_default().push(e);
        }
    }
    groups
        .into_iter()
        .map(|(rep, nodes)| {
            let local: HashMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let r = nodes.len();
            let band_start = nodes.iter().map(|&v| lay.level[v]).min().expect("nonempty");
            let mut names: Vec<String> = nodes.iter().map(|&v| inst.name(v).to_string()).collect();
            names.push(root_name.clone());
            let tree_arcs = nodes
                .iter()
                .map(|&v| {
                    let up = inst.parent(v).and_then(|p| local.get(&p).copied()).unwrap_or(r);
                    (local[&v], up)
                })
                .collect();
            let edge_origin = edges_of.remove(&rep).unwrap_or_default();
            let edges = edge_origin
                .iter()
                .map(|&e| {
                    let (u, v) = inst.edge(e);
                    (local[&u], local[&v])
                })
                .collect();
            let mut weights: Vec<Weight> = nodes.iter().map(|&v| inst.weight(v)).collect();
            weights.push(Weight::ZERO);
            let instance = Instance::with_weightless_root(InstanceParts {
                names,
                root: r,
                tree_arcs,
                edges,
                weights: Some(weights),
                embedding: None,
            })
            .expect("slice of a valid instance is valid");
            Slice {
                nodes,
                band_start,
                instance,
                edge_origin,
            }
        })
        .collect()
}

/// Embedding of a slice derived from the instance's map: keep the slice's
/// nodes and every node above its band, contract the latter into the
/// artificial root, drop loops and parallel edges.
pub(crate) fn slice_map(inst: &Instance, full: &PlanarMap, lay: &Layering, slice: &Slice) -> PlanarMap {
    let n = inst.n();
    let mut role = vec![None; n]; // Some(true) slice, Some(false) above
    for &v in &slice.nodes {
        role[v] = Some(true);
    }
    for v in 0..n {
        if lay.level[v] < slice.band_start {
            role[v] = Some(false);
        }
    }
    let mut map = full.clone();
    let doomed: Vec<usize> = map
        .edges()
        .filter(|&e| {
            let (u, v) = map.endpoints(e);
            role[u].is_none() || role[v].is_none()
        })
        .collect();
    for e in doomed {
        map.remove_edge(e);
    }
    let mut above: Vec<NodeId> = (0..n).filter(|&v| role[v] == Some(false) && v != inst.root()).collect();
    above.sort_by_key(|&v| lay.level[v]);
    // dart from each contracted node's parent, found before any merging
    let darts: Vec<usize> = above
        .iter()
        .map(|&c| {
            let p = inst.parent(c).expect("non-root has a parent");
            map.edges()
                .find(|&e| {
                    let (a, b) = map.endpoints(e);
                    (a, b) == (p, c) || (a, b) == (c, p)
                })
                .map(|e| if map.endpoints(e).0 == p { 2 * e } else { 2 * e + 1 })
                .expect("tree arc is in the map")
        })
        .collect();
    for d in darts {
        map.contract(d);
    }
    let top = if slice.band_start == 0 {
        map.add_pendant(inst.root())
    } else {
        inst.root()
    };
    map.simplify();
    let mut relabel = vec![None; map.vertex_count()];
    for (i, &v) in slice.nodes.iter().enumerate() {
        relabel[v] = Some(i);
    }
    relabel[top] = Some(slice.artificial_root());
    map.relabel(&relabel, slice.nodes.len() + 1)
}
