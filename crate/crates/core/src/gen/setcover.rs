use crate::error::{Error, Result};
use crate::instance::{Instance, InstanceParts, NodeId};

/// Elements are `0..elements`; each set lists element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverInstance {
    pub elements: usize,
    pub sets: Vec<Vec<usize>>,
    pub budget: usize,
}

impl SetCoverInstance {
    pub fn new(elements: usize, sets: Vec<Vec<usize>>, budget: usize) -> Result<SetCoverInstance> {
        if elements == 0 {
            return Err(Error::InvalidSetCover("no elements".into()));
        }
        for (j, s) in sets.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidSetCover(format!("set {} is empty", j + 1)));
            }
            if let Some(&x) = s.iter().find(|&&x| x >= elements) {
                return Err(Error::InvalidSetCover(format!(
                    "set {} contains unknown element {}",
                    j + 1,
                    x + 1
                )));
            }
        }
        if budget == 0 || budget > sets.len() {
            return Err(Error::InvalidSetCover(format!(
                "budget {budget} outside 1..={}",
                sets.len()
            )));
        }
        let mut sets = sets;
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
        }
        Ok(SetCoverInstance {
            elements,
            sets,
            budget,
        })
    }

    /// Coverage value separating yes- from no-instances on the gadget:
    /// `(k+1)n + 4m − k`.
    pub fn threshold(&self) -> u64 {
        let (n, m, k) = (self.elements as u64, self.sets.len() as u64, self.budget as u64);
        (k + 1) * n + 4 * m - k
    }
}

/// Size of a smallest subcollection covering all elements, by trying every
/// subcollection. `None` when even all sets together miss an element.
pub fn min_set_cover(sc: &SetCoverInstance) -> Option<usize> {
    let m = sc.sets.len();
    assert!(m < 32, "brute-force set cover supports fewer than 32 sets");
    let full: u64 = if sc.elements == 64 { u64::MAX } else { (1 << sc.elements) - 1 };
    let masks: Vec<u64> = sc
        .sets
        .iter()
        .map(|s| s.iter().fold(0, |acc, &x| acc | 1 << x))
        .collect();
    (0u32..1 << m)
        .filter(|pick| {
            (0..m)
                .filter(|j| pick >> j & 1 == 1)
                .fold(0, |acc, j| acc | masks[j])
                == full
        })
        .map(|pick| pick.count_ones() as usize)
        .min()
}

/// Builds the set-cover gadget and returns it with its threshold.
///
/// Root `u`; per set `S_j` the nodes `r_j, s_j, t_j, l_j, p_j` with the set
/// path `r_j → s_j → t_j → u`; the collection path `p_1 → … → p_m → u`;
/// per element `k+1` copies chained `x_i^1 → … → x_i^{k+1}`, consecutive
/// element chains joined `x_i^{k+1} → x_{i+1}^1`, the last one feeding
/// `p_1`, and every `l_j → x_1^1`. Edges: `s_j x_i^h` for `x_i ∈ S_j`, plus
/// `l_j u`, `r_j u`, `l_j t_j`, `p_j r_j`.
pub fn reduce_set_cover(sc: &SetCoverInstance) -> (Instance, u64) {
    let n = sc.elements;
    let m = sc.sets.len();
    let copies = sc.budget + 1;

    let mut names = vec!["u".to_string()];
    let mut add = |name: String| {
        names.push(name);
        names.len() - 1
    };
    let u: NodeId = 0;
    let mut r = Vec::new();
    let mut s = Vec::new();
    let mut t = Vec::new();
    let mut l = Vec::new();
    let mut p = Vec::new();
    for j in 1..=m {
        r.push(add(super::padded("r", j, m)));
        s.push(add(super::padded("s", j, m)));
        t.push(add(super::padded("t", j, m)));
        l.push(add(super::padded("l", j, m)));
        p.push(add(super::padded("p", j, m)));
    }
    let mut x = vec![Vec::new(); n];
    for (i, xi) in x.iter_mut().enumerate() {
        for h in 1..=copies {
            let name = format!("{}_{}", super::padded("x", i + 1, n), super::padded("", h, copies));
            xi.push(add(name));
        }
    }

    let mut arcs = Vec::new();
    for j in 0..m {
        arcs.push((p[j], if j + 1 < m { p[j + 1] } else { u }));
        arcs.push((r[j], s[j]));
        arcs.push((s[j], t[j]));
        arcs.push((t[j], u));
        arcs.push((l[j], x[0][0]));
    }
    for i in 0..n {
        for h in 0..copies - 1 {
            arcs.push((x[i][h], x[i][h + 1]));
        }
        let next = if i + 1 < n { x[i + 1][0] } else { p[0] };
        arcs.push((x[i][copies - 1], next));
    }

    let mut edges = Vec::new();
    for (j, set) in sc.sets.iter().enumerate() {
        for &e in set {
            for h in 0..copies {
                edges.push((s[j], x[e][h]));
            }
        }
        edges.push((l[j], u));
        edges.push((r[j], u));
        edges.push((l[j], t[j]));
        edges.push((p[j], r[j]));
    }

    let inst = Instance::new(InstanceParts {
        names,
        root: u,
        tree_arcs: arcs,
        edges,
        weights: None,
        embedding: None,
    })
    .expect("set cover gadget is a valid instance");
    (inst, sc.threshold())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{classify_edges, is_acyclic, Direction, Orientation};
    use crate::oracle::{solve_exact, solve_exact_by_orders, DEFAULT_STATE_LIMIT};
    use crate::weight::Weight;

    #[test]
    fn smallest_gadget_counts() {
        let sc = SetCoverInstance::new(1, vec![vec![0]], 1).unwrap();
        let (inst, threshold) = reduce_set_cover(&sc);
        assert_eq!(inst.n(), 1 + 5 + 2);
        assert_eq!(threshold, 5);
    }

    #[test]
    fn two_element_gadget_size() {
        let sc = SetCoverInstance::new(2, vec![vec![0, 1]], 1).unwrap();
        let (inst, threshold) = reduce_set_cover(&sc);
        assert_eq!(inst.n(), 10);
        assert_eq!(threshold, 7);
    }

    #[test]
    fn invalid_set_cover_instances() {
        assert!(SetCoverInstance::new(2, vec![vec![]], 1).is_err());
        assert!(SetCoverInstance::new(2, vec![vec![2]], 1).is_err());
        assert!(SetCoverInstance::new(2, vec![vec![0]], 2).is_err());
        assert!(SetCoverInstance::new(2, vec![vec![0]], 0).is_err());
    }

    #[test]
    fn brute_force_cover_sizes() {
        let sc = SetCoverInstance::new(3, vec![vec![0, 1], vec![1, 2], vec![2]], 1).unwrap();
        assert_eq!(min_set_cover(&sc), Some(2));
        let sc = SetCoverInstance::new(3, vec![vec![0, 1]], 1).unwrap();
        assert_eq!(min_set_cover(&sc), None);
    }

    #[test]
    fn forced_edges_point_to_the_root() {
        let sc = SetCoverInstance::new(2, vec![vec![0], vec![0, 1]], 1).unwrap();
        let (inst, _) = reduce_set_cover(&sc);
        let classes = classify_edges(&inst);
        let u = inst.root();
        let mut forced = 0;
        for &(e, dir) in &classes.back {
            let (a, b) = inst.edge(e);
            let (from, to) = if dir == Direction::Forward { (a, b) } else { (b, a) };
            assert_eq!(to, u);
            assert!(inst.name(from).starts_with('l') || inst.name(from).starts_with('r'));
            forced += 1;
        }
        assert_eq!(forced, 2 * sc.sets.len());
    }

    #[test]
    fn reversing_l_u_closes_a_cycle() {
        let sc = SetCoverInstance::new(1, vec![vec![0]], 1).unwrap();
        let (inst, _) = reduce_set_cover(&sc);
        let l = inst.index_of("l1").unwrap();
        let e = inst
            .edges()
            .iter()
            .position(|&(a, b)| a == l && b == inst.root())
            .unwrap();
        let mut o = Orientation::for_instance(&inst);
        o.set(e, Direction::Backward);
        assert!(!is_acyclic(&inst, &o));
    }

    #[test]
    fn disjoint_singletons_need_two_sets() {
        let sc = SetCoverInstance::new(2, vec![vec![0], vec![1]], 1).unwrap();
        let (inst, threshold) = reduce_set_cover(&sc);
        assert_eq!(threshold, 11);
        let opt = solve_exact(&inst, 20).unwrap().1.value;
        assert!(opt < Weight::integer(11));
        assert_eq!(
            solve_exact_by_orders(&inst, DEFAULT_STATE_LIMIT).unwrap().1.value,
            opt
        );
    }
}
