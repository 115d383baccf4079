//! Solvers for the tree augmentation problem.
//!
//! An instance is a spanning arborescence directed toward a destination
//! plus a set of undirected edges. A solution orients the undirected edges
//! so that the union stays acyclic; a node is *covered* when it gains at
//! least one outgoing non-tree arc, i.e. an alternate next hop. The goal is
//! to maximize the (weighted) number of covered nodes.
//!
//! Modules:
//! - [`instance`]: data model, validation, acyclicity and coverage.
//! - [`approx`]: the two canonical cross-edge orientations (½-approximation).
//! - [`oracle`]: exact brute-force solvers used as ground truth.
//! - [`twdp`]: exact dynamic program over a tree decomposition.
//! - [`ptas`]: layered shifting scheme for planar instances with BFS trees.
//! - [`twoarm`]: exact dynamic program for trees made of two root paths.
//! - [`gen`]: instance generators, including the set-cover gadget.
//! - [`format`]: the instance / solution file formats.

pub mod approx;
pub mod error;
pub mod format;
pub mod gen;
pub mod instance;
pub mod oracle;
pub mod ptas;
pub mod twdp;
pub mod twoarm;
pub mod weight;

pub use error::{Error, Result};
pub use instance::{
    classify_edges, complete_orientation, coverage, is_acyclic, validate_parts, CoverageReport,
    Direction, EdgeClasses, Instance, InstanceParts, NodeId, Orientation, TreeOrders, Violation,
};
pub use weight::Weight;
