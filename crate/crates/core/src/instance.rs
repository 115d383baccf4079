//! Mixed-graph instances, orientations and coverage accounting.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::weight::{ScaledWeights, Weight};

/// Dense node index. Identifiers are mapped to indices in the order of the
/// instance's node list.
pub type NodeId = usize;

/// Raw, unvalidated instance data over dense indices.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct InstanceParts {
    pub names: Vec<String>,
    pub root: NodeId,
    /// `(child, parent)` pairs.
    pub tree_arcs: Vec<(NodeId, NodeId)>,
    pub edges: Vec<(NodeId, NodeId)>,
    pub weights: Option<Vec<Weight>>,
    /// Cyclic neighbor order around every node, if the instance is embedded.
    pub embedding: Option<Vec<Vec<NodeId>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateNode(String),
    UnknownNode(String),
    IndexOutOfRange(usize),
    RootHasParent(String),
    OutDegree { node: String, count: usize },
    ArcCount { expected: usize, found: usize },
    NotReachingRoot(String),
    SelfLoop(String),
    EdgeDuplicatesArc(String, String),
    WeightCount { expected: usize, found: usize },
    NonPositiveWeight(String),
    EmbeddingShape { expected: usize, found: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateNode(v) => write!(f, "duplicate node identifier {v:?}"),
            Violation::UnknownNode(v) => write!(f, "reference to unknown node {v:?}"),
            Violation::IndexOutOfRange(i) => write!(f, "node index {i} out of range"),
            Violation::RootHasParent(v) => write!(f, "root {v:?} has an outgoing tree arc"),
            Violation::OutDegree { node, count } => write!(
                f,
                "non-root node with ≠1 outgoing tree arc: {node:?} has {count}"
            ),
            Violation::ArcCount { expected, found } => {
                write!(f, "expected {expected} tree arcs, found {found}")
            }
            Violation::NotReachingRoot(v) => {
                write!(f, "following tree parents from {v:?} does not reach the root")
            }
            Violation::SelfLoop(v) => write!(f, "self-loop edge at {v:?}"),
            Violation::EdgeDuplicatesArc(u, v) => {
                write!(f, "edge duplicates tree arc endpoints: {{{u}, {v}}}")
            }
            Violation::WeightCount { expected, found } => {
                write!(f, "expected {expected} weights, found {found}")
            }
            Violation::NonPositiveWeight(v) => write!(f, "weight of {v:?} is not positive"),
            Violation::EmbeddingShape { expected, found } => {
                write!(f, "embedding lists {found} rotations for {expected} nodes")
            }
        }
    }
}

/// Checks every instance invariant and returns all violations found.
/// Parallel undirected edges are not a violation: they are collapsed on
/// construction.
pub fn validate_parts(parts: &InstanceParts) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = parts.names.len();
    let name = |v: NodeId| -> String {
        parts
            .names
            .get(v)
            .cloned()
            .unwrap_or_else(|| format!("#{v}"))
    };

    let mut seen = HashSet::new();
    for v in &parts.names {
        if !seen.insert(v.as_str()) {
            out.push(Violation::DuplicateNode(v.clone()));
        }
    }

    let in_range = |v: NodeId, out: &mut Vec<Violation>| {
        if v >= n {
            out.push(Violation::IndexOutOfRange(v));
            false
        } else {
            true
        }
    };

    if !in_range(parts.root, &mut out) {
        return out;
    }
    let mut arcs_ok = true;
    for &(c, p) in &parts.tree_arcs {
        arcs_ok &= in_range(c, &mut out) & in_range(p, &mut out);
    }
    for &(u, v) in &parts.edges {
        in_range(u, &mut out);
        in_range(v, &mut out);
    }

    if parts.tree_arcs.len() + 1 != n {
        out.push(Violation::ArcCount {
            expected: n.saturating_sub(1),
            found: parts.tree_arcs.len(),
        });
    }

    let mut parent: Vec<Option<NodeId>> = vec![None; n];
    if arcs_ok {
        let mut outdeg = vec![0usize; n];
        for &(c, p) in &parts.tree_arcs {
            outdeg[c] += 1;
            parent[c] = Some(p);
            if c == p {
                out.push(Violation::SelfLoop(name(c)));
            }
        }
        for v in 0..n {
            if v == parts.root {
                if outdeg[v] > 0 {
                    out.push(Violation::RootHasParent(name(v)));
                }
            } else if outdeg[v] != 1 {
                out.push(Violation::OutDegree {
                    node: name(v),
                    count: outdeg[v],
                });
            }
        }
        // Reachability of the root by following parents.
        let mut state = vec![0u8; n]; // 0 unknown, 1 reaches root, 2 does not
        state[parts.root] = 1;
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut path = Vec::new();
            let mut on_path = HashSet::new();
            let mut cur = start;
            let verdict = loop {
                if state[cur] != 0 {
                    break state[cur];
                }
                if !on_path.insert(cur) {
                    break 2;
                }
                path.push(cur);
                match parent[cur] {
                    Some(p) => cur = p,
                    None => break 2,
                }
            };
            for v in path {
                state[v] = verdict;
            }
        }
        for v in 0..n {
            if state[v] == 2 {
                out.push(Violation::NotReachingRoot(name(v)));
            }
        }
    }

    let arc_pairs: HashSet<(NodeId, NodeId)> = parts
        .tree_arcs
        .iter()
        .map(|&(c, p)| (c.min(p), c.max(p)))
        .collect();
    for &(u, v) in &parts.edges {
        if u >= n || v >= n {
            continue;
        }
        if u == v {
            out.push(Violation::SelfLoop(name(u)));
        } else if arc_pairs.contains(&(u.min(v), u.max(v))) {
            out.push(Violation::EdgeDuplicatesArc(name(u), name(v)));
        }
    }

    if let Some(ws) = &parts.weights {
        if ws.len() != n {
            out.push(Violation::WeightCount {
                expected: n,
                found: ws.len(),
            });
        }
        for (v, w) in ws.iter().enumerate() {
            if !w.is_positive() {
                out.push(Violation::NonPositiveWeight(name(v)));
            }
        }
    }

    if let Some(emb) = &parts.embedding {
        if emb.len() != n {
            out.push(Violation::EmbeddingShape {
                expected: n,
                found: emb.len(),
            });
        }
        for rot in emb {
            for &v in rot {
                in_range(v, &mut out);
            }
        }
    }
    out
}

/// Direction of an undirected edge `(u, v)` as listed in the instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// `u → v`
    Forward,
    /// `v → u`
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// Depth-first pre/post-order numbers of the tree, children visited in
/// ascending identifier order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeOrders {
    pub pre: Vec<usize>,
    pub post: Vec<usize>,
    pub depth: Vec<usize>,
}

impl TreeOrders {
    /// True when `a` is an ancestor of `b` or `a == b`.
    pub fn is_ancestor_or_self(&self, a: NodeId, b: NodeId) -> bool {
        self.pre[a] <= self.pre[b] && self.post[b] <= self.post[a]
    }
}

/// A validated instance. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Instance {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    root: NodeId,
    parent: Vec<Option<NodeId>>,
    children: Vec<Vec<NodeId>>,
    edges: Vec<(NodeId, NodeId)>,
    weights: Option<Vec<Weight>>,
    embedding: Option<Vec<Vec<NodeId>>>,
    orders: TreeOrders,
}

impl Instance {
    pub fn new(parts: InstanceParts) -> Result<Instance> {
        Self::build(parts, false)
    }

    /// Like [`Instance::new`] but lets the root carry weight zero. The root
    /// is never coverable, so its weight never enters an objective value.
    pub(crate) fn with_weightless_root(parts: InstanceParts) -> Result<Instance> {
        Self::build(parts, true)
    }

    fn build(mut parts: InstanceParts, weightless_root: bool) -> Result<Instance> {
        let mut violations = validate_parts(&parts);
        if weightless_root {
            let root_name = parts.names.get(parts.root).cloned();
            violations.retain(|v| !matches!(v, Violation::NonPositiveWeight(n) if Some(n) == root_name.as_ref()));
        }
        if !violations.is_empty() {
            return Err(Error::InvalidInstance(violations));
        }
        let n = parts.names.len();

        let mut seen = HashSet::new();
        let before = parts.edges.len();
        parts.edges.retain(|&(u, v)| seen.insert((u.min(v), u.max(v))));
        if parts.edges.len() != before {
            log::warn!(
                "collapsed {} parallel undirected edge(s)",
                before - parts.edges.len()
            );
        }

        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        for &(c, p) in &parts.tree_arcs {
            parent[c] = Some(p);
            children[p].push(c);
        }
        for ch in &mut children {
            ch.sort_by(|&a, &b| parts.names[a].cmp(&parts.names[b]));
        }
        let orders = tree_orders(n, parts.root, &children);
        let index = parts
            .names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(Instance {
            names: parts.names,
            index,
            root: parts.root,
            parent,
            children,
            edges: parts.edges,
            weights: parts.weights,
            embedding: parts.embedding,
            orders,
        })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent[v]
    }

    /// Children sorted by identifier.
    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v]
    }

    /// Tree arcs as `(child, parent)` pairs, in child index order.
    pub fn tree_arcs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.map(|p| (c, p)))
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> (NodeId, NodeId) {
        self.edges[i]
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn weight(&self, v: NodeId) -> Weight {
        match &self.weights {
            Some(ws) => ws[v],
            None => Weight::ONE,
        }
    }

    pub fn weights(&self) -> Vec<Weight> {
        (0..self.n()).map(|v| self.weight(v)).collect()
    }

    pub fn scaled_weights(&self) -> Result<ScaledWeights> {
        match &self.weights {
            Some(ws) => ScaledWeights::from_weights(ws),
            None => Ok(ScaledWeights::unit(self.n())),
        }
    }

    pub fn embedding(&self) -> Option<&[Vec<NodeId>]> {
        self.embedding.as_deref()
    }

    pub fn orders(&self) -> &TreeOrders {
        &self.orders
    }

    pub fn depth(&self, v: NodeId) -> usize {
        self.orders.depth[v]
    }

    /// Sum of the weights of `nodes`.
    pub fn weight_of<I: IntoIterator<Item = NodeId>>(&self, nodes: I) -> Weight {
        nodes.into_iter().map(|v| self.weight(v)).sum()
    }

    pub fn to_parts(&self) -> InstanceParts {
        InstanceParts {
            names: self.names.clone(),
            root: self.root,
            tree_arcs: self.tree_arcs().collect(),
            edges: self.edges.clone(),
            weights: self.weights.clone(),
            embedding: self.embedding.clone(),
        }
    }

    /// Same instance with different node weights (`None` = unit weights).
    pub fn with_weights(&self, weights: Option<Vec<Weight>>) -> Result<Instance> {
        let mut parts = self.to_parts();
        parts.weights = weights;
        Instance::new(parts)
    }

    /// Same instance with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: Weight) -> Result<Instance> {
        let ws = self
            .weights()
            .iter()
            .map(|w| w.checked_mul(&factor).ok_or(Error::WeightOverflow))
            .collect::<Result<Vec<_>>>()?;
        self.with_weights(Some(ws))
    }

    /// Endpoints of undirected edges other than the root: the nodes some
    /// orientation could cover.
    pub fn coverable(&self) -> Vec<bool> {
        let mut out = vec![false; self.n()];
        for &(u, v) in &self.edges {
            out[u] = true;
            out[v] = true;
        }
        out[self.root] = false;
        out
    }

    /// Adjacency of the undirected graph formed by tree arcs and edges.
    pub fn undirected_adjacency(&self) -> Vec<Vec<NodeId>> {
        let mut adj = vec![Vec::new(); self.n()];
        for (c, p) in self.tree_arcs() {
            adj[c].push(p);
            adj[p].push(c);
        }
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }
}

fn tree_orders(n: usize, root: NodeId, children: &[Vec<NodeId>]) -> TreeOrders {
    let mut pre = vec![0; n];
    let mut post = vec![0; n];
    let mut depth = vec![0; n];
    let (mut pre_clock, mut post_clock) = (0, 0);
    // (node, next child position)
    let mut stack = vec![(root, 0usize)];
    pre[root] = pre_clock;
    pre_clock += 1;
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if let Some(&c) = children[v].get(*next) {
            *next += 1;
            pre[c] = pre_clock;
            pre_clock += 1;
            depth[c] = depth[v] + 1;
            stack.push((c, 0));
        } else {
            post[v] = post_clock;
            post_clock += 1;
            stack.pop();
        }
    }
    TreeOrders { pre, post, depth }
}

/// A possibly partial assignment of directions to the instance's edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    dirs: Vec<Option<Direction>>,
}

impl Orientation {
    /// No edge assigned.
    pub fn empty(edge_count: usize) -> Orientation {
        Orientation {
            dirs: vec![None; edge_count],
        }
    }

    pub fn for_instance(inst: &Instance) -> Orientation {
        Orientation::empty(inst.edges().len())
    }

    pub fn total(dirs: Vec<Direction>) -> Orientation {
        Orientation {
            dirs: dirs.into_iter().map(Some).collect(),
        }
    }

    pub fn from_options(dirs: Vec<Option<Direction>>) -> Orientation {
        Orientation { dirs }
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn get(&self, edge: usize) -> Option<Direction> {
        self.dirs[edge]
    }

    pub fn set(&mut self, edge: usize, dir: Direction) {
        self.dirs[edge] = Some(dir);
    }

    pub fn unset(&mut self, edge: usize) {
        self.dirs[edge] = None;
    }

    /// Orients `edge` so that the arc leaves `from`.
    pub fn set_from(&mut self, inst: &Instance, edge: usize, from: NodeId) {
        let (u, v) = inst.edge(edge);
        debug_assert!(from == u || from == v);
        self.dirs[edge] = Some(if from == u {
            Direction::Forward
        } else {
            Direction::Backward
        });
    }

    pub fn is_total(&self) -> bool {
        self.dirs.iter().all(Option::is_some)
    }

    pub fn assigned(&self) -> impl Iterator<Item = (usize, Direction)> + '_ {
        self.dirs
            .iter()
            .enumerate()
            .filter_map(|(i, d)| d.map(|d| (i, d)))
    }

    pub fn directions(&self) -> &[Option<Direction>] {
        &self.dirs
    }

    /// Assigned edges as arcs `(from, to)`.
    pub fn arcs<'a>(&'a self, inst: &'a Instance) -> impl Iterator<Item = (NodeId, NodeId)> + 'a {
        self.assigned().map(move |(i, d)| {
            let (u, v) = inst.edge(i);
            match d {
                Direction::Forward => (u, v),
                Direction::Backward => (v, u),
            }
        })
    }
}

/// Back edges with their forced direction, and cross edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClasses {
    pub back: Vec<(usize, Direction)>,
    pub cross: Vec<usize>,
    pub orders: TreeOrders,
}

/// Splits the undirected edges into back edges (ancestor/descendant pairs,
/// forced descendant → ancestor) and cross edges.
pub fn classify_edges(inst: &Instance) -> EdgeClasses {
    let orders = inst.orders().clone();
    let mut back = Vec::new();
    let mut cross = Vec::new();
    for (i, &(u, v)) in inst.edges().iter().enumerate() {
        if orders.is_ancestor_or_self(v, u) {
            back.push((i, Direction::Forward));
        } else if orders.is_ancestor_or_self(u, v) {
            back.push((i, Direction::Backward));
        } else {
            cross.push(i);
        }
    }
    EdgeClasses {
        back,
        cross,
        orders,
    }
}

fn check_len(inst: &Instance, o: &Orientation) -> Result<()> {
    if o.len() != inst.edges().len() {
        return Err(Error::OrientationLength {
            expected: inst.edges().len(),
            found: o.len(),
        });
    }
    Ok(())
}

/// Topological order of tree arcs plus assigned arcs, if one exists.
pub fn topological_order(inst: &Instance, o: &Orientation) -> Option<Vec<NodeId>> {
    let n = inst.n();
    let mut out_adj: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for (a, b) in inst.tree_arcs().chain(o.arcs(inst)) {
        out_adj[a].push(b);
        indeg[b] += 1;
    }
    let mut queue: VecDeque<NodeId> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &out_adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// True iff the tree arcs together with the assigned arcs of `o` form a DAG.
///
/// Panics if `o` does not have one slot per instance edge.
pub fn is_acyclic(inst: &Instance, o: &Orientation) -> bool {
    assert_eq!(o.len(), inst.edges().len(), "orientation length mismatch");
    topological_order(inst, o).is_some()
}

/// Covered nodes and their weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub covered: BTreeSet<NodeId>,
    pub value: Weight,
    /// Nodes no orientation can cover: those incident to no edge, and the root.
    pub uncoverable: BTreeSet<NodeId>,
}

/// Nodes with at least one outgoing assigned arc.
pub fn covered_nodes(inst: &Instance, o: &Orientation) -> Vec<bool> {
    let mut covered = vec![false; inst.n()];
    for (a, _) in o.arcs(inst) {
        covered[a] = true;
    }
    covered
}

pub fn coverage(inst: &Instance, o: &Orientation) -> Result<CoverageReport> {
    check_len(inst, o)?;
    if !is_acyclic(inst, o) {
        return Err(Error::Infeasible);
    }
    let covered: BTreeSet<NodeId> = covered_nodes(inst, o)
        .iter()
        .enumerate()
        .filter_map(|(v, &c)| c.then_some(v))
        .collect();
    let coverable = inst.coverable();
    let uncoverable = (0..inst.n()).filter(|&v| !coverable[v]).collect();
    let value = inst.weight_of(covered.iter().copied());
    Ok(CoverageReport {
        covered,
        value,
        uncoverable,
    })
}

/// Extends a feasible partial orientation to a total one. Each unassigned
/// edge is directed from the endpoint that comes first in a topological
/// order of the current arcs, so acyclicity is kept and coverage only grows.
pub fn complete_orientation(inst: &Instance, o: &Orientation) -> Result<Orientation> {
    check_len(inst, o)?;
    let order = topological_order(inst, o).ok_or(Error::Infeasible)?;
    let mut pos = vec![0usize; inst.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut out = o.clone();
    for (i, &(u, v)) in inst.edges().iter().enumerate() {
        if out.get(i).is_none() {
            out.set(
                i,
                if pos[u] < pos[v] {
                    Direction::Forward
                } else {
                    Direction::Backward
                },
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Builds an instance from string identifiers. Arcs are `(child, parent)`.
    pub(crate) fn build(
        nodes: &[&str],
        root: &str,
        arcs: &[(&str, &str)],
        edges: &[(&str, &str)],
    ) -> Instance {
        let idx = |s: &str| nodes.iter().position(|&x| x == s).unwrap();
        Instance::new(InstanceParts {
            names: nodes.iter().map(|s| s.to_string()).collect(),
            root: idx(root),
            tree_arcs: arcs.iter().map(|&(c, p)| (idx(c), idx(p))).collect(),
            edges: edges.iter().map(|&(u, v)| (idx(u), idx(v))).collect(),
            weights: None,
            embedding: None,
        })
        .unwrap()
    }

    fn parts(nodes: &[&str], root: usize, arcs: &[(usize, usize)], edges: &[(usize, usize)]) -> InstanceParts {
        InstanceParts {
            names: nodes.iter().map(|s| s.to_string()).collect(),
            root,
            tree_arcs: arcs.to_vec(),
            edges: edges.to_vec(),
            weights: None,
            embedding: None,
        }
    }

    #[test]
    fn single_node_is_valid() {
        assert!(validate_parts(&parts(&["d"], 0, &[], &[])).is_empty());
    }

    #[test]
    fn edge_duplicating_arc_is_rejected() {
        let v = validate_parts(&parts(&["d", "a"], 0, &[(1, 0)], &[(1, 0)]));
        assert_eq!(v, vec![Violation::EdgeDuplicatesArc("a".into(), "d".into())]);
        assert!(v[0].to_string().contains("edge duplicates tree arc endpoints"));
    }

    #[test]
    fn two_arcs_out_of_one_node_is_rejected() {
        let v = validate_parts(&parts(&["d", "a", "b"], 0, &[(1, 0), (1, 2)], &[]));
        assert!(v.iter().any(|x| matches!(x, Violation::OutDegree { node, count: 2 } if node == "a")));
        assert!(v.iter().any(|x| matches!(x, Violation::OutDegree { node, count: 0 } if node == "b")));
        assert!(v.iter().any(|x| x.to_string().contains("non-root node with ≠1 outgoing tree arc")));
    }

    #[test]
    fn tree_cycle_and_bad_weights_are_named() {
        let mut p = parts(&["d", "a", "b"], 0, &[(1, 2), (2, 1)], &[(0, 0)]);
        p.weights = Some(vec![Weight::ONE, Weight::ZERO, Weight::integer(-1)]);
        let v = validate_parts(&p);
        assert!(v.contains(&Violation::NotReachingRoot("a".into())));
        assert!(v.contains(&Violation::NotReachingRoot("b".into())));
        assert!(v.contains(&Violation::SelfLoop("d".into())));
        assert!(v.contains(&Violation::NonPositiveWeight("a".into())));
        assert!(v.contains(&Violation::NonPositiveWeight("b".into())));
    }

    #[test]
    fn parallel_edges_are_collapsed() {
        let inst = build(&["d", "a", "b"], "d", &[("a", "d"), ("b", "d")], &[("a", "b"), ("b", "a")]);
        assert_eq!(inst.edges().len(), 1);
    }

    #[test]
    fn orders_visit_children_by_identifier() {
        let inst = build(&["d", "b", "a", "c"], "d", &[("b", "d"), ("a", "d"), ("c", "a")], &[]);
        let o = inst.orders();
        let id = |s| inst.index_of(s).unwrap();
        assert_eq!(o.pre[id("d")], 0);
        assert_eq!(o.pre[id("a")], 1);
        assert_eq!(o.pre[id("c")], 2);
        assert_eq!(o.pre[id("b")], 3);
        assert_eq!(o.post[id("c")], 0);
        assert_eq!(o.post[id("a")], 1);
        assert_eq!(o.post[id("b")], 2);
        assert_eq!(o.post[id("d")], 3);
        assert_eq!(o.depth[id("c")], 2);
    }

    #[test]
    fn back_edge_on_path_is_forced_up() {
        let inst = build(&["d", "a", "b"], "d", &[("a", "d"), ("b", "a")], &[("b", "d")]);
        let cls = classify_edges(&inst);
        assert_eq!(cls.back, vec![(0, Direction::Forward)]);
        assert!(cls.cross.is_empty());
        // Listed the other way round the forced direction flips.
        let inst = build(&["d", "a", "b"], "d", &[("a", "d"), ("b", "a")], &[("d", "b")]);
        assert_eq!(classify_edges(&inst).back, vec![(0, Direction::Backward)]);
    }

    #[test]
    fn sibling_edge_is_cross() {
        let inst = build(&["d", "a", "b"], "d", &[("a", "d"), ("b", "d")], &[("a", "b")]);
        let cls = classify_edges(&inst);
        assert!(cls.back.is_empty());
        assert_eq!(cls.cross, vec![0]);
    }

    #[test]
    fn acyclicity_of_basic_orientations() {
        let inst = build(&["d", "a", "b"], "d", &[("a", "d"), ("b", "a")], &[("b", "d")]);
        assert!(is_acyclic(&inst, &Orientation::for_instance(&inst)));
        assert!(is_acyclic(&inst, &Orientation::total(vec![Direction::Forward])));
        assert!(!is_acyclic(&inst, &Orientation::total(vec![Direction::Backward])));
    }

    #[test]
    fn coverage_of_star_edge() {
        let inst = build(&["d", "a", "b"], "d", &[("a", "d"), ("b", "d")], &[("a", "b")]);
        let empty = coverage(&inst, &Orientation::for_instance(&inst)).unwrap();
        assert!(empty.covered.is_empty());
        assert_eq!(empty.value, Weight::ZERO);
        let rep = coverage(&inst, &Orientation::total(vec![Direction::Forward])).unwrap();
        assert_eq!(rep.covered, BTreeSet::from([inst.index_of("a").unwrap()]));
        assert_eq!(rep.value, Weight::ONE);
        assert_eq!(rep.uncoverable, BTreeSet::from([inst.root()]));
    }

    #[test]
    fn coverage_rejects_cycles() {
        let inst = build(&["d", "a", "b"], "d", &[("a", "d"), ("b", "a")], &[("b", "d")]);
        assert!(matches!(
            coverage(&inst, &Orientation::total(vec![Direction::Backward])),
            Err(Error::Infeasible)
        ));
    }

    #[test]
    fn completion_is_identity_on_total_input() {
        let inst = build(&["d", "a", "b"], "d", &[("a", "d"), ("b", "d")], &[("a", "b")]);
        let o = Orientation::total(vec![Direction::Backward]);
        assert_eq!(complete_orientation(&inst, &o).unwrap(), o);
    }

    #[test]
    fn completion_of_empty_is_total_and_feasible() {
        let inst = build(
            &["d", "a", "b", "c"],
            "d",
            &[("a", "d"), ("b", "a"), ("c", "d")],
            &[("b", "d"), ("b", "c"), ("a", "c")],
        );
        let o = complete_orientation(&inst, &Orientation::for_instance(&inst)).unwrap();
        assert!(o.is_total());
        assert!(is_acyclic(&inst, &o));
    }
}
