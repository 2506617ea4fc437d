//! Left-right planarity test with embedding, and an Euler face-trace check
//! of the resulting rotation system.
//!
//! The test follows Brandes' formulation of the de Fraysseix-Rosenstiehl
//! criterion. All depth-first passes use explicit stacks so deep graphs do
//! not overflow the call stack.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::network::Network;

/// Rotation system: for every vertex its neighbours in clockwise order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub rotation: Vec<Vec<usize>>,
    pub face_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanarityVerdict {
    Planar(Embedding),
    Nonplanar,
}

impl PlanarityVerdict {
    pub fn is_planar(&self) -> bool {
        matches!(self, PlanarityVerdict::Planar(_))
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            PlanarityVerdict::Planar(e) => Some(e),
            PlanarityVerdict::Nonplanar => None,
        }
    }
}

pub fn check_planarity(net: &Network) -> PlanarityVerdict {
    planarity(net.vertex_count(), net.edges())
}

pub fn euler_certificate(net: &Network, emb: &Embedding) -> Result<bool> {
    euler_check(net.vertex_count(), net.edges(), emb)
}

/// Planarity of the abstract simple graph on `0..n`. Self-loops are ignored.
pub fn planarity(n: usize, edges: &[(usize, usize)]) -> PlanarityVerdict {
    match LrState::new(n, edges).run() {
        Some(rotation) => {
            let face_starts = trace_faces(&rotation).expect("tester emits a well-formed rotation");
            let comp = components(n, &rotation);
            let face_count = face_total(n, &face_starts, &comp);
            PlanarityVerdict::Planar(Embedding { rotation, face_count })
        }
        None => PlanarityVerdict::Nonplanar,
    }
}

/// Checks that `emb` is a rotation system of the graph and that tracing its
/// faces satisfies V - E + F = 2 in every component with an edge. Returns
/// `Ok(false)` when Euler's formula fails, which means the rotation does not
/// describe a plane embedding.
pub fn euler_check(n: usize, edges: &[(usize, usize)], emb: &Embedding) -> Result<bool> {
    if emb.rotation.len() != n {
        return Err(Error::MalformedRotation(format!("{} rotations for {n} vertices", emb.rotation.len())));
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u >= n || v >= n || u == v {
            return Err(Error::MalformedRotation(format!("bad edge ({u}, {v})")));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    for (v, (nbrs, rot)) in adj.iter_mut().zip(&emb.rotation).enumerate() {
        let mut sorted_rot = rot.clone();
        sorted_rot.sort_unstable();
        nbrs.sort_unstable();
        if *nbrs != sorted_rot {
            return Err(Error::MalformedRotation(format!("rotation at vertex {v} does not match its edges")));
        }
    }
    let face_starts = trace_faces(&emb.rotation)?;
    let comp = components(n, &adj);
    let mut v_count = vec![0i64; comp.count];
    let mut e_count = vec![0i64; comp.count];
    let mut f_count = vec![0i64; comp.count];
    for v in 0..n {
        v_count[comp.of[v]] += 1;
    }
    for &(u, _) in edges {
        e_count[comp.of[u]] += 1;
    }
    for &start in &face_starts {
        f_count[comp.of[start]] += 1;
    }
    let euler = (0..comp.count).all(|c| e_count[c] == 0 || v_count[c] - e_count[c] + f_count[c] == 2);
    Ok(euler && face_total(n, &face_starts, &comp) == emb.face_count)
}

/// Faces of the whole drawing: components share the outer face and an
/// isolated vertex contributes only that face.
fn face_total(n: usize, face_starts: &[usize], comp: &Components) -> usize {
    if n == 0 {
        return 0;
    }
    let mut with_faces = vec![false; comp.count];
    for &s in face_starts {
        with_faces[comp.of[s]] = true;
    }
    let isolated = with_faces.iter().filter(|&&f| !f).count();
    face_starts.len() + isolated - (comp.count - 1)
}

struct Components {
    of: Vec<usize>,
    count: usize,
}

fn components(n: usize, adj: &[Vec<usize>]) -> Components {
    let mut of = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if of[s] != usize::MAX {
            continue;
        }
        of[s] = count;
        stack.push(s);
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if of[v] == usize::MAX {
                    of[v] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    Components { of, count }
}

/// Traces the faces of a rotation system. The dart after (u, v) is
/// (v, w) where w follows u in the clockwise order at v. Returns, per face, the
/// vertex each face was first entered from.
fn trace_faces(rotation: &[Vec<usize>]) -> Result<Vec<usize>> {
    // position of each neighbour inside its vertex's rotation
    let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
    let mut offset = Vec::with_capacity(rotation.len() + 1);
    let mut total = 0;
    for (v, rot) in rotation.iter().enumerate() {
        offset.push(total);
        for (i, &w) in rot.iter().enumerate() {
            if pos.insert((v, w), i).is_some() {
                return Err(Error::MalformedRotation(format!("neighbour {w} repeated at vertex {v}")));
            }
        }
        total += rot.len();
    }
    offset.push(total);
    let mut used = vec![false; total];
    let mut faces = Vec::new();
    for v in 0..rotation.len() {
        for i in 0..rotation[v].len() {
            if used[offset[v] + i] {
                continue;
            }
            let (mut a, mut ai) = (v, i);
            while !used[offset[a] + ai] {
                used[offset[a] + ai] = true;
                let b = rotation[a][ai];
                let back = *pos
                    .get(&(b, a))
                    .ok_or_else(|| Error::MalformedRotation(format!("dart {a}->{b} has no reverse")))?;
                let next = (back + 1) % rotation[b].len();
                (a, ai) = (b, next);
            }
            faces.push(v);
        }
    }
    Ok(faces)
}

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval { low: NONE, high: NONE };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Debug, Clone, Copy)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Half-edge rotation built incrementally, doubly linked per vertex.
#[derive(Default)]
struct RotationBuilder {
    links: Vec<HashMap<usize, (usize, usize)>>,
    first: Vec<usize>,
}

impl RotationBuilder {
    fn new(n: usize) -> Self {
        Self { links: vec![HashMap::new(); n], first: vec![NONE; n] }
    }

    /// Inserts `end` clockwise after `reference` around `start`.
    fn add_cw(&mut self, start: usize, end: usize, reference: usize) {
        let links = &mut self.links[start];
        if reference == NONE {
            links.insert(end, (end, end));
            self.first[start] = end;
            return;
        }
        let cw_ref = links[&reference].0;
        links.insert(end, (cw_ref, reference));
        links.get_mut(&reference).unwrap().0 = end;
        links.get_mut(&cw_ref).unwrap().1 = end;
    }

    /// Inserts `end` counterclockwise before `reference` around `start`.
    fn add_ccw(&mut self, start: usize, end: usize, reference: usize) {
        if reference == NONE {
            self.add_cw(start, end, NONE);
            return;
        }
        let ccw_ref = self.links[start][&reference].1;
        self.add_cw(start, end, ccw_ref);
        if reference == self.first[start] {
            self.first[start] = end;
        }
    }

    fn add_first(&mut self, start: usize, end: usize) {
        let reference = self.first[start];
        self.add_ccw(start, end, reference);
    }

    fn into_rotation(self) -> Vec<Vec<usize>> {
        self.links
            .iter()
            .zip(&self.first)
            .map(|(links, &first)| {
                let mut out = Vec::with_capacity(links.len());
                if first != NONE {
                    let mut w = first;
                    loop {
                        out.push(w);
                        w = links[&w].0;
                        if w == first {
                            break;
                        }
                    }
                }
                out
            })
            .collect()
    }
}

struct LrState {
    n: usize,
    adjs: Vec<Vec<usize>>,
    m: usize,
    // oriented edges
    ends: Vec<(usize, usize)>,
    edge_id: HashMap<(usize, usize), usize>,
    out: Vec<Vec<usize>>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    reference: Vec<usize>,
    side: Vec<i64>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
    roots: Vec<usize>,
}

impl LrState {
    fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjs = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in edges {
            if u != v && seen.insert((u.min(v), u.max(v))) {
                adjs[u].push(v);
                adjs[v].push(u);
            }
        }
        let m = seen.len();
        LrState {
            n,
            adjs,
            m,
            ends: Vec::with_capacity(m),
            edge_id: HashMap::with_capacity(m),
            out: vec![Vec::new(); n],
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            lowpt: Vec::with_capacity(m),
            lowpt2: Vec::with_capacity(m),
            nesting_depth: Vec::with_capacity(m),
            reference: Vec::new(),
            side: Vec::new(),
            lowpt_edge: Vec::new(),
            stack_bottom: Vec::new(),
            stack: Vec::new(),
            roots: Vec::new(),
        }
    }

    fn run(mut self) -> Option<Vec<Vec<usize>>> {
        if self.n > 2 && self.m > 3 * self.n - 6 {
            return None;
        }
        // scratch shared by all roots: each vertex and edge belongs to one tree
        let mut next = vec![0usize; self.n];
        let mut resume = vec![false; self.m];
        for v in 0..self.n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                self.roots.push(v);
                self.orient(v, &mut next, &mut resume);
            }
        }
        let m = self.ends.len();
        self.reference = vec![NONE; m];
        self.side = vec![1; m];
        self.lowpt_edge = vec![NONE; m];
        self.stack_bottom = vec![0; m];
        self.sort_out_edges();
        next.fill(0);
        resume.fill(false);
        for i in 0..self.roots.len() {
            if !self.test(self.roots[i], &mut next, &mut resume) {
                return None;
            }
        }
        for e in 0..m {
            let s = self.sign(e);
            self.nesting_depth[e] *= s;
        }
        self.sort_out_edges();
        let mut rot = RotationBuilder::new(self.n);
        for v in 0..self.n {
            let mut prev = NONE;
            for &e in &self.out[v] {
                let w = self.ends[e].1;
                rot.add_cw(v, w, prev);
                prev = w;
            }
        }
        self.embed(&mut rot);
        Some(rot.into_rotation())
    }

    fn sort_out_edges(&mut self) {
        let depth = &self.nesting_depth;
        for out in &mut self.out {
            out.sort_by_key(|&e| depth[e]);
        }
    }

    /// Orients the graph along a DFS and computes lowpoints and nesting
    /// depths.
    /// `resume` marks tree edges whose child is being explored.
    fn orient(&mut self, root: usize, next: &mut [usize], resume: &mut [bool]) {
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let e = self.parent_edge[v];
            while next[v] < self.adjs[v].len() {
                let w = self.adjs[v][next[v]];
                let vw;
                let resumed = self.edge_id.get(&(v, w)).is_some_and(|&id| resume[id]);
                if resumed {
                    vw = self.edge_id[&(v, w)];
                    resume[vw] = false;
                } else {
                    if self.edge_id.contains_key(&(v, w)) || self.edge_id.contains_key(&(w, v)) {
                        next[v] += 1;
                        continue;
                    }
                    vw = self.ends.len();
                    self.ends.push((v, w));
                    self.edge_id.insert((v, w), vw);
                    self.out[v].push(vw);
                    self.lowpt.push(self.height[v]);
                    self.lowpt2.push(self.height[v]);
                    self.nesting_depth.push(0);
                    if self.height[w] == NONE {
                        self.parent_edge[w] = vw;
                        self.height[w] = self.height[v] + 1;
                        resume[vw] = true;
                        stack.push(v);
                        stack.push(w);
                        break;
                    }
                    self.lowpt[vw] = self.height[w];
                }
                self.nesting_depth[vw] = 2 * self.lowpt[vw] as i64;
                if self.lowpt2[vw] < self.height[v] {
                    // chordal
                    self.nesting_depth[vw] += 1;
                }
                if e != NONE {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                next[v] += 1;
            }
        }
    }

    fn conflicting(&self, i: Interval, b: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low];
        }
        self.lowpt[p.left.low].min(self.lowpt[p.right.low])
    }

    fn test(&mut self, root: usize, next: &mut [usize], resumed: &mut [bool]) -> bool {
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let e = self.parent_edge[v];
            let mut descended = false;
            while next[v] < self.out[v].len() {
                let ei = self.out[v][next[v]];
                let w = self.ends[ei].1;
                if !resumed[ei] {
                    self.stack_bottom[ei] = self.stack.len();
                    if ei == self.parent_edge[w] {
                        resumed[ei] = true;
                        stack.push(v);
                        stack.push(w);
                        descended = true;
                        break;
                    }
                    self.lowpt_edge[ei] = ei;
                    self.stack.push(ConflictPair { left: Interval::EMPTY, right: Interval { low: ei, high: ei } });
                }
                if self.lowpt[ei] < self.height[v] {
                    if next[v] == 0 {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                next[v] += 1;
            }
            if !descended && e != NONE {
                self.remove_back_edges(e);
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair { left: Interval::EMPTY, right: Interval::EMPTY };
        // merge return edges of ei into p.right
        loop {
            let mut q = self.stack.pop().expect("return edges of ei are on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q.right.low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while let Some(&top) = self.stack.last() {
            if !(self.conflicting(top.left, ei) || self.conflicting(top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(q.right, ei) {
                q.swap();
            }
            if self.conflicting(q.right, ei) {
                return false;
            }
            if p.right.low != NONE {
                self.reference[p.right.low] = q.right.high;
            }
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.reference[p.left.low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.ends[e].0;
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if p.left.low != NONE {
                self.side[p.left.low] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.ends[p.left.high].1 == u {
                p.left.high = self.reference[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.reference[p.left.low] = p.right.low;
                self.side[p.left.low] = -1;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.ends[p.right.high].1 == u {
                p.right.high = self.reference[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.reference[p.right.low] = p.left.low;
                self.side[p.right.low] = -1;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("an edge with a return edge leaves a conflict pair");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) { hl } else { hr };
        }
    }

    /// Resolves the side of `e` through its reference chain.
    fn sign(&mut self, e: usize) -> i64 {
        let mut chain = vec![e];
        let mut cur = e;
        while self.reference[cur] != NONE {
            cur = self.reference[cur];
            chain.push(cur);
        }
        for i in (0..chain.len() - 1).rev() {
            let (a, b) = (chain[i], chain[i + 1]);
            self.side[a] *= self.side[b];
            self.reference[a] = NONE;
        }
        self.side[e]
    }

    fn embed(&self, rot: &mut RotationBuilder) {
        let mut left_ref = vec![NONE; self.n];
        let mut right_ref = vec![NONE; self.n];
        let mut next = vec![0usize; self.n];
        for &root in &self.roots {
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                while next[v] < self.out[v].len() {
                    let ei = self.out[v][next[v]];
                    next[v] += 1;
                    let w = self.ends[ei].1;
                    if ei == self.parent_edge[w] {
                        rot.add_first(w, v);
                        left_ref[v] = w;
                        right_ref[v] = w;
                        stack.push(v);
                        stack.push(w);
                        break;
                    }
                    if self.side[ei] == 1 {
                        rot.add_cw(w, v, right_ref[w]);
                    } else {
                        rot.add_ccw(w, v, left_ref[w]);
                        left_ref[w] = v;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
    }

    fn certified(n: usize, edges: &[(usize, usize)]) -> Embedding {
        let emb = planarity(n, edges).embedding().cloned().expect("planar");
        assert!(euler_check(n, edges, &emb).unwrap());
        emb
    }

    #[test]
    fn kuratowski_graphs() {
        assert!(!planarity(5, &complete(5)).is_planar());
        let k33: Vec<_> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
        assert!(!planarity(6, &k33).is_planar());
        // K3,3 subdivided once per edge stays nonplanar
        let mut sub = Vec::new();
        for (i, &(u, v)) in k33.iter().enumerate() {
            sub.push((u, 6 + i));
            sub.push((6 + i, v));
        }
        assert!(!planarity(15, &sub).is_planar());
    }

    #[test]
    fn k4_has_four_faces() {
        assert_eq!(certified(4, &complete(4)).face_count, 4);
    }

    #[test]
    fn small_certificates() {
        let cycle = [(0, 1), (1, 2), (2, 3), (3, 0)];
        assert_eq!(certified(4, &cycle).face_count, 2);
        assert_eq!(certified(2, &[(0, 1)]).face_count, 1);
        assert_eq!(certified(1, &[]).face_count, 1);
        // two triangles and an isolated vertex
        let two = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
        assert_eq!(certified(7, &two).face_count, 3);
    }

    #[test]
    fn scrambled_rotation_fails() {
        // K4 drawn with vertex 0's rotation reversed
        let edges = complete(4);
        let mut emb = certified(4, &edges);
        emb.rotation[0].reverse();
        assert!(!euler_check(4, &edges, &emb).unwrap());

        let mut bad = emb.clone();
        bad.rotation[1].pop();
        assert!(matches!(euler_check(4, &edges, &bad), Err(Error::MalformedRotation(_))));
    }

    #[test]
    fn grid_and_tree() {
        let side = 10;
        let mut edges = Vec::new();
        for r in 0..side {
            for c in 0..side {
                let v = r * side + c;
                if c + 1 < side {
                    edges.push((v, v + 1));
                }
                if r + 1 < side {
                    edges.push((v, v + side));
                }
            }
        }
        assert_eq!(certified(side * side, &edges).face_count, 82);
        let tree: Vec<_> = (1..50).map(|v| ((v - 1) / 3, v)).collect();
        assert_eq!(certified(50, &tree).face_count, 1);
    }

    #[test]
    fn long_path_does_not_overflow_the_stack() {
        let n = 200_000;
        let path: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        assert_eq!(certified(n, &path).face_count, 1);
    }
}
