use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::instance::{Instance, NodeId};
use crate::twdp::{verify_decomposition, TreeDecomposition};

use super::map::PlanarMap;

/// Decomposition of a slice from its planar map and its tree: one bag per
/// face of a triangulation holding the tree paths of the face's corners,
/// bags joined across non-tree edges.
pub(crate) fn baker_decomposition(slice: &Instance, map: &PlanarMap) -> Result<TreeDecomposition> {
    let mut map = map.clone();
    let tree: HashSet<usize> = map
        .edges()
        .filter(|&e| {
            let (u, v) = map.endpoints(e);
            slice.parent(u) == Some(v) || slice.parent(v) == Some(u)
        })
        .collect();
    if tree.len() + 1 != slice.n() {
        return Err(Error::Embedding(format!(
            "slice map holds {} of {} tree arcs",
            tree.len(),
            slice.n() - 1
        )));
    }
    map.triangulate();
    let (faces, face_of) = map.faces();
    let mut adj = vec![Vec::new(); faces.len()];
    for e in map.edges() {
        if tree.contains(&e) {
            continue;
        }
        let (f, g) = (face_of[2 * e], face_of[2 * e + 1]);
        if f == g {
            return Err(Error::Embedding("non-tree edge borders a single face".into()));
        }
        adj[f].push(g);
        adj[g].push(f);
    }
    let mut parent = vec![None; faces.len()];
    let mut seen = vec![false; faces.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    let mut reached = 1;
    while let Some(f) = queue.pop_front() {
        for &g in &adj[f] {
            if !seen[g] {
                seen[g] = true;
                parent[g] = Some(f);
                reached += 1;
                queue.push_back(g);
            }
        }
    }
    if reached != faces.len() {
        return Err(Error::Embedding("dual of the non-tree edges is disconnected".into()));
    }
    let bags: Vec<Vec<NodeId>> = faces
        .iter()
        .map(|walk| {
            let mut bag = BTreeSet::new();
            for &d in walk {
                let mut v = Some(map.tail(d));
                while let Some(x) = v {
                    if !bag.insert(x) {
                        break;
                    }
                    v = slice.parent(x);
                }
            }
            bag.into_iter().collect()
        })
        .collect();
    let td = TreeDecomposition::from_parents(bags, parent)?.binarize();
    let violations = verify_decomposition(slice, &td);
    if !violations.is_empty() {
        return Err(Error::InvalidDecomposition(violations));
    }
    Ok(td)
}
