use std::collections::{HashMap, HashSet};

/// Combinatorial map. Dart `2e` runs from the first endpoint of edge `e`
/// to the second, dart `2e + 1` the other way.
#[derive(Clone, Debug)]
pub(crate) struct PlanarMap {
    head: Vec<usize>,
    alive: Vec<bool>,
    /// Outgoing darts of each vertex in cyclic order.
    rot: Vec<Vec<usize>>,
}

impl PlanarMap {
    /// Builds the map from neighbour rotations of a simple graph. Every pair
    /// must be listed at both ends exactly once.
    pub(crate) fn from_rotations(rotations: &[Vec<usize>]) -> Result<PlanarMap, String> {
        let n = rotations.len();
        let mut edge_of: HashMap<(usize, usize), usize> = HashMap::new();
        let mut head = Vec::new();
        let mut rot = vec![Vec::new(); n];
        for (u, nbrs) in rotations.iter().enumerate() {
            let mut seen = HashSet::new();
            for &v in nbrs {
                if v >= n || v == u {
                    return Err(format!("rotation of node {u} lists invalid neighbour {v}"));
                }
                if !seen.insert(v) {
                    return Err(format!("rotation of node {u} lists neighbour {v} twice"));
                }
                let key = (u.min(v), u.max(v));
                let e = *edge_of.entry(key).or_insert_with(|| {
                    head.push(key.1);
                    head.push(key.0);
                    head.len() / 2 - 1
                });
                rot[u].push(if u == key.0 { 2 * e } else { 2 * e + 1 });
            }
        }
        let map = PlanarMap {
            alive: vec![true; head.len()],
            head,
            rot,
        };
        for d in 0..map.head.len() {
            if !map.rot[map.tail(d)].contains(&d) {
                return Err(format!(
                    "pair {{{}, {}}} is listed at one end only",
                    map.tail(d),
                    map.head(d)
                ));
            }
        }
        Ok(map)
    }

    pub(crate) fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub(crate) fn head(&self, d: usize) -> usize {
        self.head[d]
    }

    pub(crate) fn tail(&self, d: usize) -> usize {
        self.head[d ^ 1]
    }

    pub(crate) fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.head.len() / 2).filter(|&e| self.alive[2 * e])
    }

    pub(crate) fn endpoints(&self, e: usize) -> (usize, usize) {
        (self.head[2 * e + 1], self.head[2 * e])
    }

    fn position(&self, v: usize, d: usize) -> usize {
        self.rot[v].iter().position(|&x| x == d).expect("dart sits at its tail")
    }

    /// Dart following `d` on its face.
    pub(crate) fn next(&self, d: usize) -> usize {
        let v = self.head(d);
        let r = &self.rot[v];
        r[(self.position(v, d ^ 1) + 1) % r.len()]
    }

    /// Faces as dart cycles, plus the face of every live dart.
    pub(crate) fn faces(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut face_of = vec![usize::MAX; self.head.len()];
        let mut faces = Vec::new();
        for start in 0..self.head.len() {
            if !self.alive[start] || face_of[start] != usize::MAX {
                continue;
            }
            let f = faces.len();
            let mut walk = Vec::new();
            let mut d = start;
            while face_of[d] == usize::MAX {
                face_of[d] = f;
                walk.push(d);
                d = self.next(d);
            }
            faces.push(walk);
        }
        (faces, face_of)
    }

    /// Checks V − E + F = 2 on every component with at least one edge.
    pub(crate) fn check_euler(&self) -> Result<(), String> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX || self.rot[s].is_empty() {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &d in &self.rot[v] {
                    let w = self.head(d);
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        let mut vs = vec![0i64; count];
        let mut es = vec![0i64; count];
        let mut fs = vec![0i64; count];
        for v in 0..n {
            if comp[v] != usize::MAX {
                vs[comp[v]] += 1;
            }
        }
        for e in self.edges() {
            es[comp[self.endpoints(e).0]] += 1;
        }
        let (faces, _) = self.faces();
        for f in &faces {
            fs[comp[self.tail(f[0])]] += 1;
        }
        for c in 0..count {
            let chi = vs[c] - es[c] + fs[c];
            if chi != 2 {
                return Err(format!(
                    "rotation system is not planar: V − E + F = {} − {} + {} = {chi}",
                    vs[c], es[c], fs[c]
                ));
            }
        }
        Ok(())
    }

    /// Merges the head of dart `a` into its tail. The merged rotation lists
    /// the tail's darts after `a`, then the head's darts after the twin.
    pub(crate) fn contract(&mut self, a: usize) {
        let x = self.tail(a);
        let y = self.head(a);
        assert_ne!(x, y, "cannot contract a loop");
        let b = a ^ 1;
        let rx = std::mem::take(&mut self.rot[x]);
        let ry = std::mem::take(&mut self.rot[y]);
        let px = rx.iter().position(|&d| d == a).expect("a at x");
        let py = ry.iter().position(|&d| d == b).expect("b at y");
        let mut merged = Vec::with_capacity(rx.len() + ry.len() - 2);
        merged.extend(rx[px + 1..].iter().chain(&rx[..px]));
        merged.extend(ry[py + 1..].iter().chain(&ry[..py]));
        for &d in &merged {
            if self.head[d ^ 1] == y {
                self.head[d ^ 1] = x;
            }
        }
        self.rot[x] = merged;
        self.alive[a] = false;
        self.alive[b] = false;
    }

    pub(crate) fn remove_edge(&mut self, e: usize) {
        for d in [2 * e, 2 * e + 1] {
            let t = self.tail(d);
            self.rot[t].retain(|&x| x != d);
            self.alive[d] = false;
        }
    }

    /// Drops loops and keeps one edge per vertex pair.
    pub(crate) fn simplify(&mut self) {
        let mut seen = HashSet::new();
        let edges: Vec<usize> = self.edges().collect();
        for e in edges {
            let (u, v) = self.endpoints(e);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                self.remove_edge(e);
            }
        }
    }

    /// Adds a vertex joined to `v` by one edge; returns the new vertex.
    pub(crate) fn add_pendant(&mut self, v: usize) -> usize {
        let w = self.rot.len();
        let e = self.head.len() / 2;
        self.head.push(w);
        self.head.push(v);
        self.alive.push(true);
        self.alive.push(true);
        self.rot[v].push(2 * e);
        self.rot.push(vec![2 * e + 1]);
        w
    }

    /// Renumbers vertices; `relabel[old] = Some(new)` for every vertex that
    /// keeps darts.
    pub(crate) fn relabel(&self, relabel: &[Option<usize>], count: usize) -> PlanarMap {
        let mut rot = vec![Vec::new(); count];
        for (old, r) in self.rot.iter().enumerate() {
            if r.is_empty() {
                continue;
            }
            let new = relabel[old].expect("vertex with darts is relabelled");
            rot[new] = r.clone();
        }
        let head = self
            .head
            .iter()
            .enumerate()
            .map(|(d, &h)| if self.alive[d] { relabel[h].expect("live head relabelled") } else { usize::MAX })
            .collect();
        PlanarMap {
            head,
            alive: self.alive.clone(),
            rot,
        }
    }

    /// Splits faces by chords until every face has at most three distinct
    /// corners. Returns the added edges.
    pub(crate) fn triangulate(&mut self) -> Vec<usize> {
        let mut added = Vec::new();
        let (faces, _) = self.faces();
        for face in faces {
            let mut walk = face;
            loop {
                let corners: HashSet<usize> = walk.iter().map(|&d| self.tail(d)).collect();
                if corners.len() <= 3 {
                    break;
                }
                let k = walk.len();
                let i = (0..k)
                    .find(|&i| self.tail(walk[i]) != self.head(walk[(i + 1) % k]))
                    .expect("a face with four corners has a chord");
                let (d0, d1) = (walk[i], walk[(i + 1) % k]);
                let c = self.insert_chord(d0, d1);
                added.push(c / 2);
                // the remaining face replaces d0, d1 by the chord's twin
                let mut rest = Vec::with_capacity(k - 1);
                for j in 0..k {
                    let d = walk[(i + j) % k];
                    if j == 0 {
                        rest.push(c ^ 1);
                    } else if j >= 2 {
                        rest.push(d);
                    }
                }
                walk = rest;
            }
        }
        added
    }

    /// With `d1 = next(d0)` on a face, joins `head(d1)` to `tail(d0)` so
    /// that `d0, d1` and the chord bound a triangle. Returns the chord's dart
    /// from `head(d1)` to `tail(d0)`.
    fn insert_chord(&mut self, d0: usize, d1: usize) -> usize {
        let v0 = self.tail(d0);
        let v2 = self.head(d1);
        let e = self.head.len() / 2;
        let c = 2 * e; // v2 -> v0
        self.head.push(v0);
        self.head.push(v2);
        self.alive.push(true);
        self.alive.push(true);
        let p = self.position(v2, d1 ^ 1);
        self.rot[v2].insert(p + 1, c);
        let q = self.position(v0, d0);
        self.rot[v0].insert(q, c ^ 1);
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> PlanarMap {
        // 0 (0,0), 1 (1,0), 2 (1,1), 3 (0,1), counter-clockwise rotations
        PlanarMap::from_rotations(&[vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap()
    }

    #[test]
    fn square_has_two_faces() {
        let m = square();
        assert_eq!(m.faces().0.len(), 2);
        assert!(m.check_euler().is_ok());
    }

    #[test]
    fn k4_bad_rotation_is_not_planar() {
        let good = PlanarMap::from_rotations(&[vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]]).unwrap();
        let bad = PlanarMap::from_rotations(&[vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]]).unwrap();
        assert!(good.check_euler().is_ok());
        assert!(bad.check_euler().is_err());
    }

    #[test]
    fn one_sided_pair_is_rejected() {
        assert!(PlanarMap::from_rotations(&[vec![1], vec![]]).is_err());
    }

    #[test]
    fn triangulating_square_adds_one_chord_per_face() {
        let mut m = square();
        let added = m.triangulate();
        assert_eq!(added.len(), 2);
        assert!(m.check_euler().is_ok());
        assert!(m.faces().0.iter().all(|f| f.len() == 3));
    }

    #[test]
    fn contraction_keeps_planarity() {
        let mut m = square();
        m.contract(0);
        m.simplify();
        assert!(m.check_euler().is_ok());
        assert_eq!(m.edges().count(), 3);
    }
}
