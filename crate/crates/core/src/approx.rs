//! The ½-approximation: back edges go up the tree, cross edges are all
//! oriented along the DFS pre-order or all against it, and the better of the
//! two orientations wins.

use crate::error::Result;
use crate::instance::{
    classify_edges, complete_orientation, coverage, CoverageReport, Direction, Instance,
    Orientation,
};

/// The two canonical total orientations. `forward` directs every cross edge
/// from its lower pre-order endpoint to its higher one; `reverse` flips
/// every cross edge. Back edges point to the ancestor in both.
pub fn canonical_cross_orientations(inst: &Instance) -> (Orientation, Orientation) {
    let classes = classify_edges(inst);
    let mut forward = Orientation::for_instance(inst);
    for &(e, dir) in &classes.back {
        forward.set(e, dir);
    }
    let mut reverse = forward.clone();
    let pre = &classes.orders.pre;
    for &e in &classes.cross {
        let (u, v) = inst.edge(e);
        let dir = if pre[u] < pre[v] {
            Direction::Forward
        } else {
            Direction::Backward
        };
        forward.set(e, dir);
        reverse.set(e, dir.reversed());
    }
    (forward, reverse)
}

/// Returns the better canonical orientation; ties go to `forward`.
pub fn half_approx(inst: &Instance) -> Result<(Orientation, CoverageReport)> {
    let (forward, reverse) = canonical_cross_orientations(inst);
    let f = coverage(inst, &forward)?;
    let r = coverage(inst, &reverse)?;
    let (best, report) = if r.value > f.value {
        (reverse, r)
    } else {
        (forward, f)
    };
    // Both canonical orientations are total already.
    let best = complete_orientation(inst, &best)?;
    Ok((best, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_instance;
    use crate::instance::is_acyclic;
    use crate::instance::tests::build;
    use crate::weight::Weight;

    #[test]
    fn no_cross_edges_gives_identical_orientations() {
        let inst = build(&["d", "a", "b"], "d", &[("a", "d"), ("b", "a")], &[("b", "d")]);
        let (f, r) = canonical_cross_orientations(&inst);
        assert_eq!(f, r);
        assert_eq!(f.get(0), Some(Direction::Forward));
    }

    #[test]
    fn sibling_cross_edge_flips_between_orientations() {
        let inst = build(&["d", "a", "b"], "d", &[("a", "d"), ("b", "d")], &[("b", "a")]);
        let (f, r) = canonical_cross_orientations(&inst);
        let a = inst.index_of("a").unwrap();
        let b = inst.index_of("b").unwrap();
        assert_eq!(f.arcs(&inst).collect::<Vec<_>>(), vec![(a, b)]);
        assert_eq!(r.arcs(&inst).collect::<Vec<_>>(), vec![(b, a)]);
    }

    #[test]
    fn no_edges_gives_zero() {
        let inst = build(&["d", "a"], "d", &[("a", "d")], &[]);
        let (_, rep) = half_approx(&inst).unwrap();
        assert_eq!(rep.value, Weight::ZERO);
    }

    #[test]
    fn canonical_orientations_are_acyclic_on_random_instances() {
        for seed in 0..300 {
            let inst = random_instance(2 + (seed % 14) as usize, 0.35, seed);
            let (f, r) = canonical_cross_orientations(&inst);
            assert!(is_acyclic(&inst, &f), "seed {seed}");
            assert!(is_acyclic(&inst, &r), "seed {seed}");
        }
    }

    #[test]
    fn every_cross_endpoint_is_covered_by_one_of_the_two() {
        for seed in 0..200 {
            let inst = random_instance(3 + (seed % 10) as usize, 0.4, seed);
            let classes = classify_edges(&inst);
            let (f, r) = canonical_cross_orientations(&inst);
            let cf = coverage(&inst, &f).unwrap().covered;
            let cr = coverage(&inst, &r).unwrap().covered;
            for &e in &classes.cross {
                let (u, v) = inst.edge(e);
                for x in [u, v] {
                    assert!(cf.contains(&x) || cr.contains(&x), "seed {seed} node {x}");
                }
            }
        }
    }
}
