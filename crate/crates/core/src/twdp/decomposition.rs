use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::instance::{Instance, NodeId};

/// Rooted tree of bags over instance nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<NodeId>>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

impl TreeDecomposition {
    /// Builds the decomposition from bags and parent pointers. Fails unless
    /// the pointers form a single rooted tree.
    pub fn from_parents(bags: Vec<Vec<NodeId>>, parent: Vec<Option<usize>>) -> Result<TreeDecomposition> {
        let k = bags.len();
        let not_tree = |msg: String| Error::InvalidDecomposition(vec![DecompositionViolation::NotATree(msg)]);
        if parent.len() != k {
            return Err(not_tree(format!("{k} bags but {} parent pointers", parent.len())));
        }
        if k == 0 {
            return Err(not_tree("no bags".into()));
        }
        let roots: Vec<usize> = (0..k).filter(|&i| parent[i].is_none()).collect();
        if roots.len() != 1 {
            return Err(not_tree(format!("{} bags without parent, expected 1", roots.len())));
        }
        let mut children = vec![Vec::new(); k];
        for (i, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= k {
                    return Err(not_tree(format!("bag {i} has parent {p} out of range")));
                }
                children[p].push(i);
            }
        }
        let root = roots[0];
        let mut seen = vec![false; k];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        let mut count = 1;
        while let Some(b) = queue.pop_front() {
            for &c in &children[b] {
                if !seen[c] {
                    seen[c] = true;
                    count += 1;
                    queue.push_back(c);
                }
            }
        }
        if count != k {
            return Err(not_tree("parent pointers contain a cycle".into()));
        }
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        Ok(TreeDecomposition {
            bags,
            parent,
            children,
            root,
        })
    }

    pub fn bags(&self) -> &[Vec<NodeId>] {
        &self.bags
    }

    pub fn bag(&self, i: usize) -> &[NodeId] {
        &self.bags[i]
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// Bags in an order where every child precedes its parent.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![(self.root, false)];
        while let Some((b, expanded)) = stack.pop() {
            if expanded {
                out.push(b);
            } else {
                stack.push((b, true));
                for &c in self.children[b].iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        let mut queue = VecDeque::from([self.root]);
        while let Some(b) = queue.pop_front() {
            for &c in &self.children[b] {
                depth[c] = depth[b] + 1;
                queue.push_back(c);
            }
        }
        depth
    }

    /// Splits every bag with more than two children into a chain of copies
    /// of itself, each holding at most two children.
    pub fn binarize(&self) -> TreeDecomposition {
        let mut bags = self.bags.clone();
        let mut parent = self.parent.clone();
        for b in 0..self.len() {
            let kids = &self.children[b];
            if kids.len() <= 2 {
                continue;
            }
            // b keeps kids[0]; copy_1 takes kids[1] and copy_2; ...; the last
            // copy takes the final two children.
            let mut holder = b;
            for (i, &kid) in kids.iter().enumerate().skip(1) {
                if i == kids.len() - 1 {
                    parent[kid] = Some(holder);
                } else {
                    bags.push(self.bags[b].clone());
                    let copy = bags.len() - 1;
                    parent.push(Some(holder));
                    parent[kid] = Some(copy);
                    holder = copy;
                }
            }
        }
        TreeDecomposition::from_parents(bags, parent).expect("binarizing keeps a tree")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionViolation {
    NotATree(String),
    NodeOutOfRange { bag: usize, node: usize },
    MissingNode(String),
    ArcNotInBag(String, String),
    EdgeNotInBag(String, String),
    Disconnected(String),
    NotBinary { bag: usize, children: usize },
}

impl fmt::Display for DecompositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionViolation::NotATree(m) => write!(f, "bag tree malformed: {m}"),
            DecompositionViolation::NodeOutOfRange { bag, node } => {
                write!(f, "bag {bag} names node index {node} out of range")
            }
            DecompositionViolation::MissingNode(v) => {
                write!(f, "property 2: node {v:?} is in no bag")
            }
            DecompositionViolation::ArcNotInBag(c, p) => {
                write!(f, "property 3: tree arc {c:?}→{p:?} shares no bag")
            }
            DecompositionViolation::EdgeNotInBag(u, v) => {
                write!(f, "property 3: edge {{{u:?}, {v:?}}} shares no bag")
            }
            DecompositionViolation::Disconnected(v) => {
                write!(f, "property 4: bags containing {v:?} are not connected")
            }
            DecompositionViolation::NotBinary { bag, children } => {
                write!(f, "bag {bag} has {children} children, expected at most 2")
            }
        }
    }
}

/// Checks the decomposition properties (coverage of nodes, of tree arcs and
/// edges, connectivity of each node's bags) and that the bag tree is binary.
pub fn verify_decomposition(inst: &Instance, td: &TreeDecomposition) -> Vec<DecompositionViolation> {
    let n = inst.n();
    let mut out = Vec::new();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (b, bag) in td.bags().iter().enumerate() {
        for &v in bag {
            if v >= n {
                out.push(DecompositionViolation::NodeOutOfRange { bag: b, node: v });
            } else {
                holders[v].push(b);
            }
        }
    }
    for v in 0..n {
        if holders[v].is_empty() {
            out.push(DecompositionViolation::MissingNode(inst.name(v).to_string()));
        }
    }
    let shares_bag = |u: NodeId, v: NodeId| {
        holders[u]
            .iter()
            .any(|&b| td.bag(b).binary_search(&v).is_ok())
    };
    for (c, p) in inst.tree_arcs() {
        if !shares_bag(c, p) {
            out.push(DecompositionViolation::ArcNotInBag(
                inst.name(c).to_string(),
                inst.name(p).to_string(),
            ));
        }
    }
    for &(u, v) in inst.edges() {
        if !shares_bag(u, v) {
            out.push(DecompositionViolation::EdgeNotInBag(
                inst.name(u).to_string(),
                inst.name(v).to_string(),
            ));
        }
    }
    // Bags holding v induce a connected subtree iff exactly one of them has
    // its parent outside the set.
    for v in 0..n {
        if holders[v].is_empty() {
            continue;
        }
        let tops = holders[v]
            .iter()
            .filter(|&&b| match td.parents()[b] {
                None => true,
                Some(p) => td.bag(p).binary_search(&v).is_err(),
            })
            .count();
        if tops != 1 {
            out.push(DecompositionViolation::Disconnected(inst.name(v).to_string()));
        }
    }
    for b in 0..td.len() {
        if td.children(b).len() > 2 {
            out.push(DecompositionViolation::NotBinary {
                bag: b,
                children: td.children(b).len(),
            });
        }
    }
    out
}
