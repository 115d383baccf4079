//! Instance, solution and decomposition documents (JSON).
//!
//! Writers emit a canonical field order with sorted lists so that equal
//! content always serializes to identical bytes.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::instance::{
    coverage, is_acyclic, validate_parts, CoverageReport, Direction, Instance, InstanceParts,
    Orientation, Violation,
};
use crate::twdp::TreeDecomposition;
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub nodes: Vec<String>,
    pub root: String,
    pub tree_arcs: Vec<[String; 2]>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, Weight>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<BTreeMap<String, Vec<String>>>,
    /// Generator metadata, e.g. the set-cover threshold.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, serde_json::Value>,
}

impl InstanceDoc {
    pub fn from_json(text: &str) -> Result<InstanceDoc> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn from_instance(inst: &Instance) -> InstanceDoc {
        let name = |v: usize| inst.name(v).to_string();
        let mut nodes: Vec<String> = inst.names().to_vec();
        nodes.sort();
        let mut tree_arcs: Vec<[String; 2]> =
            inst.tree_arcs().map(|(c, p)| [name(c), name(p)]).collect();
        tree_arcs.sort();
        let mut edges: Vec<[String; 2]> =
            inst.edges().iter().map(|&(u, v)| [name(u), name(v)]).collect();
        edges.sort();
        let weights = inst.is_weighted().then(|| {
            (0..inst.n())
                .map(|v| (name(v), inst.weight(v)))
                .collect::<BTreeMap<_, _>>()
        });
        let embedding = inst.embedding().map(|emb| {
            emb.iter()
                .enumerate()
                .map(|(v, rot)| (name(v), rot.iter().map(|&w| name(w)).collect()))
                .collect()
        });
        InstanceDoc {
            nodes,
            root: name(inst.root()),
            tree_arcs,
            edges,
            weights,
            embedding,
            meta: BTreeMap::new(),
        }
    }

    /// Resolves identifiers to indices. Unknown identifiers are reported as
    /// violations.
    pub fn to_parts(&self) -> std::result::Result<InstanceParts, Vec<Violation>> {
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, v) in self.nodes.iter().enumerate() {
            index.entry(v.as_str()).or_insert(i);
        }
        let mut bad = Vec::new();
        let mut look = |s: &str| -> usize {
            match index.get(s) {
                Some(&i) => i,
                None => {
                    let v = Violation::UnknownNode(s.to_string());
                    if !bad.contains(&v) {
                        bad.push(v);
                    }
                    usize::MAX
                }
            }
        };
        let root = look(&self.root);
        let tree_arcs: Vec<_> = self
            .tree_arcs
            .iter()
            .map(|[c, p]| (look(c), look(p)))
            .collect();
        let edges: Vec<_> = self.edges.iter().map(|[u, v]| (look(u), look(v))).collect();
        let weights = self.weights.as_ref().map(|map| {
            for k in map.keys() {
                look(k);
            }
            self.nodes
                .iter()
                .map(|v| map.get(v).copied().unwrap_or(Weight::ONE))
                .collect::<Vec<_>>()
        });
        let embedding = self.embedding.as_ref().map(|map| {
            for k in map.keys() {
                look(k);
            }
            self.nodes
                .iter()
                .map(|v| {
                    map.get(v)
                        .map(|rot| rot.iter().map(|w| look(w)).collect())
                        .unwrap_or_default()
                })
                .collect::<Vec<_>>()
        });
        if !bad.is_empty() {
            return Err(bad);
        }
        Ok(InstanceParts {
            names: self.nodes.clone(),
            root,
            tree_arcs,
            edges,
            weights,
            embedding,
        })
    }

    pub fn validate(&self) -> Vec<Violation> {
        match self.to_parts() {
            Ok(parts) => validate_parts(&parts),
            Err(v) => v,
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        let parts = self.to_parts().map_err(Error::InvalidInstance)?;
        Instance::new(parts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDoc {
    /// Every edge of the instance as a `[from, to]` arc.
    pub oriented: Vec<[String; 2]>,
    pub value: Weight,
    pub covered: Vec<String>,
}

impl SolutionDoc {
    pub fn from_json(text: &str) -> Result<SolutionDoc> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("solution serializes");
        s.push('\n');
        s
    }

    pub fn new(inst: &Instance, o: &Orientation, report: &CoverageReport) -> SolutionDoc {
        let mut oriented: Vec<[String; 2]> = o
            .arcs(inst)
            .map(|(a, b)| [inst.name(a).to_string(), inst.name(b).to_string()])
            .collect();
        oriented.sort();
        let mut covered: Vec<String> = report
            .covered
            .iter()
            .map(|&v| inst.name(v).to_string())
            .collect();
        covered.sort();
        SolutionDoc {
            oriented,
            value: report.value,
            covered,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolutionError {
    #[error("arc [{0}, {1}] is not an edge of the instance")]
    UnknownArc(String, String),
    #[error("edge {{{0}, {1}}} is oriented more than once")]
    DuplicateArc(String, String),
    #[error("edge {{{0}, {1}}} is not oriented")]
    Unoriented(String, String),
    #[error("oriented edges close a directed cycle")]
    Cycle,
    #[error("claimed value {claimed} but the orientation covers {actual}")]
    ValueMismatch { claimed: Weight, actual: Weight },
    #[error("claimed covered set differs from recomputation")]
    CoveredMismatch,
}

/// Reads a solution document back into an orientation of `inst`.
pub fn solution_orientation(
    inst: &Instance,
    doc: &SolutionDoc,
) -> std::result::Result<Orientation, SolutionError> {
    let mut by_pair: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, &(u, v)) in inst.edges().iter().enumerate() {
        by_pair.insert((u, v), i);
    }
    let mut o = Orientation::for_instance(inst);
    for [a, b] in &doc.oriented {
        let unknown = || SolutionError::UnknownArc(a.clone(), b.clone());
        let ia = inst.index_of(a).ok_or_else(unknown)?;
        let ib = inst.index_of(b).ok_or_else(unknown)?;
        let (edge, dir) = match (by_pair.get(&(ia, ib)), by_pair.get(&(ib, ia))) {
            (Some(&e), _) => (e, Direction::Forward),
            (None, Some(&e)) => (e, Direction::Backward),
            (None, None) => return Err(unknown()),
        };
        if o.get(edge).is_some() {
            return Err(SolutionError::DuplicateArc(a.clone(), b.clone()));
        }
        o.set(edge, dir);
    }
    if let Some(i) = (0..inst.edges().len()).find(|&i| o.get(i).is_none()) {
        let (u, v) = inst.edge(i);
        return Err(SolutionError::Unoriented(
            inst.name(u).to_string(),
            inst.name(v).to_string(),
        ));
    }
    Ok(o)
}

/// Recomputes feasibility, value and covered set of a solution from scratch.
pub fn check_solution(
    inst: &Instance,
    doc: &SolutionDoc,
) -> std::result::Result<CoverageReport, SolutionError> {
    let o = solution_orientation(inst, doc)?;
    if !is_acyclic(inst, &o) {
        return Err(SolutionError::Cycle);
    }
    let report = coverage(inst, &o).map_err(|_| SolutionError::Cycle)?;
    if report.value != doc.value {
        return Err(SolutionError::ValueMismatch {
            claimed: doc.value,
            actual: report.value,
        });
    }
    let mut covered: Vec<&str> = report.covered.iter().map(|&v| inst.name(v)).collect();
    covered.sort_unstable();
    let mut claimed: Vec<&str> = doc.covered.iter().map(String::as_str).collect();
    claimed.sort_unstable();
    if covered != claimed {
        return Err(SolutionError::CoveredMismatch);
    }
    Ok(report)
}

/// Tree decomposition file: bags of node identifiers plus a parent pointer
/// per bag (`null` for the root).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub bags: Vec<Vec<String>>,
    pub parent: Vec<Option<usize>>,
}

impl DecompositionDoc {
    pub fn from_json(text: &str) -> Result<DecompositionDoc> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("decomposition serializes");
        s.push('\n');
        s
    }

    pub fn from_decomposition(inst: &Instance, td: &TreeDecomposition) -> DecompositionDoc {
        DecompositionDoc {
            bags: td
                .bags()
                .iter()
                .map(|b| b.iter().map(|&v| inst.name(v).to_string()).collect())
                .collect(),
            parent: td.parents().to_vec(),
        }
    }

    /// Builds the decomposition without checking it; run
    /// [`crate::twdp::verify_decomposition`] afterwards.
    pub fn to_decomposition(&self, inst: &Instance) -> Result<TreeDecomposition> {
        if self.bags.len() != self.parent.len() {
            return Err(Error::Format(format!(
                "{} bags but {} parent pointers",
                self.bags.len(),
                self.parent.len()
            )));
        }
        let bags = self
            .bags
            .iter()
            .map(|b| {
                b.iter()
                    .map(|s| {
                        inst.index_of(s)
                            .ok_or_else(|| Error::Format(format!("unknown node {s:?} in bag")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        TreeDecomposition::from_parents(bags, self.parent.clone())
    }
}
