//! Geometric graphs with axis-parallel edges.

use rustc_hash::{FxHashMap as HashMap, FxHashSet as HashSet};

use crate::error::{Error, Result};
use crate::geometry::{l1_distance, Point, PointClass};
use crate::histogram::Segment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: usize,
    pub point: Point,
    pub class: PointClass,
}

/// A geometric graph: vertices with unique integer coordinates and
/// horizontal or vertical edges weighted by their length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, u64)>>,
    index: HashMap<Point, usize>,
}

impl Network {
    /// Validates and indexes a vertex and edge list. Ids are positions in
    /// `vertices`.
    pub fn new(vertices: Vec<(Point, PointClass)>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut index = HashMap::with_capacity_and_hasher(vertices.len(), Default::default());
        let vertices: Vec<Vertex> =
            vertices.into_iter().enumerate().map(|(id, (point, class))| Vertex { id, point, class }).collect();
        for v in &vertices {
            if index.insert(v.point, v.id).is_some() {
                return Err(Error::DuplicatePoint(v.point));
            }
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        let mut seen = HashSet::with_capacity_and_hasher(edges.len(), Default::default());
        for &(u, v) in &edges {
            let (a, b) = match (vertices.get(u), vertices.get(v)) {
                (Some(a), Some(b)) => (a.point, b.point),
                _ => return Err(Error::InternalGeometry(format!("edge ({u}, {v}) references a missing vertex"))),
            };
            if u == v || (a.x != b.x && a.y != b.y) {
                return Err(Error::InternalGeometry(format!("edge {a}-{b} is not axis-parallel with positive length")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InternalGeometry(format!("duplicate edge {a}-{b}")));
            }
            let w = l1_distance(a, b);
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        Ok(Self { vertices, edges, adjacency, index })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn steiner_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.class == PointClass::Steiner).count()
    }

    pub fn vertex_id(&self, p: Point) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn point(&self, id: usize) -> Point {
        self.vertices[id].point
    }

    /// Neighbours of `id` with edge weights.
    pub fn neighbors(&self, id: usize) -> &[(usize, u64)] {
        &self.adjacency[id]
    }

    pub fn total_length(&self) -> u64 {
        self.edges.iter().map(|&(u, v)| l1_distance(self.point(u), self.point(v))).sum()
    }

    pub fn component_count(&self) -> usize {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &(v, _) in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Copy of the network with edge number `i` removed.
    pub fn without_edge(&self, i: usize) -> Network {
        let vertices = self.vertices.iter().map(|v| (v.point, v.class)).collect();
        let mut edges = self.edges.clone();
        edges.remove(i);
        Network::new(vertices, edges).expect("removing an edge keeps the network valid")
    }
}

/// Mutable graph used by the builders: vertices are deduplicated by
/// coordinate and edges are produced by splitting segments at every vertex
/// lying on them.
#[derive(Debug, Default)]
pub(crate) struct GraphBuilder {
    points: Vec<Point>,
    classes: Vec<PointClass>,
    alive: Vec<bool>,
    index: HashMap<Point, usize>,
    /// Sorted neighbour ids.
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, p: Point, class: PointClass) -> usize {
        if let Some(&id) = self.index.get(&p) {
            if class == PointClass::Original {
                self.classes[id] = PointClass::Original;
            }
            return id;
        }
        let id = self.points.len();
        self.points.push(p);
        self.classes.push(class);
        self.alive.push(true);
        self.adj.push(Vec::new());
        self.index.insert(p, id);
        id
    }

    pub fn id(&self, p: Point) -> Option<usize> {
        self.index.get(&p).copied().filter(|&id| self.alive[id])
    }

    pub fn point(&self, id: usize) -> Point {
        self.points[id]
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        let Err(at) = self.adj[u].binary_search(&v) else { return false };
        self.adj[u].insert(at, v);
        let at = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(at, u);
        self.edge_count += 1;
        true
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if let Ok(at) = self.adj[u].binary_search(&v) {
            self.adj[u].remove(at);
            let at = self.adj[v].binary_search(&u).expect("adjacency is symmetric");
            self.adj[v].remove(at);
            self.edge_count -= 1;
            true
        } else {
            false
        }
    }

    #[cfg(test)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Whether `a` and `b` are joined by a path of collinear edges running
    /// straight from one to the other.
    pub fn has_straight_path(&self, a: usize, b: usize) -> bool {
        let (pa, pb) = (self.points[a], self.points[b]);
        let (dx, dy) = ((pb.x - pa.x).signum(), (pb.y - pa.y).signum());
        if dx != 0 && dy != 0 {
            return false;
        }
        let mut cur = a;
        while cur != b {
            let p = self.points[cur];
            let next = self.adj[cur].iter().copied().find(|&v| {
                let q = self.points[v];
                (q.x - p.x).signum() == dx
                    && (q.y - p.y).signum() == dy
                    && (pb.x - q.x) * dx >= 0
                    && (pb.y - q.y) * dy >= 0
            });
            match next {
                Some(v) => cur = v,
                None => return false,
            }
        }
        true
    }

    /// Live vertices lying on the closed segment, sorted along it.
    pub fn vertices_on(&self, seg: Segment, lines: &LineIndex) -> Vec<usize> {
        lines.on_segment(seg).into_iter().filter(|&id| self.alive[id]).collect()
    }

    /// Adds an edge between every pair of consecutive vertices on each
    /// segment. Returns the ids found on any of the segments.
    pub fn subdivide(&mut self, segments: &[Segment], lines: &LineIndex) -> HashSet<usize> {
        let mut touched = HashSet::default();
        for &seg in segments {
            let on = self.vertices_on(seg, lines);
            for w in on.windows(2) {
                self.add_edge(w[0], w[1]);
            }
            touched.extend(on);
        }
        touched
    }

    /// Deletes `v` and splices the collinear edge pairs through it: a
    /// left/right pair becomes one horizontal edge, an up/down pair one
    /// vertical edge. Unpaired incident edges are dropped.
    pub fn smooth_out(&mut self, v: usize) {
        let p = self.points[v];
        let nbrs: Vec<usize> = self.adj[v].clone();
        let pick = |pred: &dyn Fn(Point) -> bool| nbrs.iter().copied().find(|&u| pred(self.points[u]));
        let left = pick(&|q| q.y == p.y && q.x < p.x);
        let right = pick(&|q| q.y == p.y && q.x > p.x);
        let down = pick(&|q| q.x == p.x && q.y < p.y);
        let up = pick(&|q| q.x == p.x && q.y > p.y);
        for u in nbrs {
            self.remove_edge(v, u);
        }
        self.alive[v] = false;
        self.index.remove(&p);
        if let (Some(a), Some(b)) = (left, right) {
            self.add_edge(a, b);
        }
        if let (Some(a), Some(b)) = (down, up) {
            self.add_edge(a, b);
        }
    }

    /// Freezes the graph. `first` lists vertex ids that take the lowest ids in
    /// the given order; the remaining live vertices follow in creation order.
    /// `map` transforms every coordinate on the way out.
    pub fn finish(&self, first: &[usize], map: impl Fn(Point) -> Point) -> Result<Network> {
        let mut new_id = vec![usize::MAX; self.points.len()];
        let mut order: Vec<usize> = Vec::with_capacity(self.points.len());
        for id in first.iter().copied().chain(0..self.points.len()) {
            if self.alive[id] && new_id[id] == usize::MAX {
                new_id[id] = order.len();
                order.push(id);
            }
        }
        let vertices = order.iter().map(|&id| (map(self.points[id]), self.classes[id])).collect();
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(self.edge_count);
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs.iter().filter(|&&v| v > u) {
                let (a, b) = (new_id[u], new_id[v]);
                edges.push((a.min(b), a.max(b)));
            }
        }
        edges.sort_unstable();
        Network::new(vertices, edges)
    }
}

/// Vertices sorted by row and by column for segment queries.
#[derive(Debug, Default)]
pub(crate) struct LineIndex {
    /// `(y, x, id)`
    rows: Vec<(i64, i64, usize)>,
    /// `(x, y, id)`
    cols: Vec<(i64, i64, usize)>,
}

impl LineIndex {
    pub fn build(g: &GraphBuilder) -> Self {
        let live = g.points.iter().enumerate().filter(|&(id, _)| g.alive[id]);
        let mut rows: Vec<_> = live.clone().map(|(id, p)| (p.y, p.x, id)).collect();
        let mut cols: Vec<_> = live.map(|(id, p)| (p.x, p.y, id)).collect();
        rows.sort_unstable();
        cols.sort_unstable();
        LineIndex { rows, cols }
    }

    pub fn on_segment(&self, seg: Segment) -> Vec<usize> {
        let (table, line, lo, hi) = if seg.a.y == seg.b.y {
            (&self.rows, seg.a.y, seg.a.x.min(seg.b.x), seg.a.x.max(seg.b.x))
        } else if seg.a.x == seg.b.x {
            (&self.cols, seg.a.x, seg.a.y.min(seg.b.y), seg.a.y.max(seg.b.y))
        } else {
            return Vec::new();
        };
        let start = table.partition_point(|&(l, c, _)| (l, c) < (line, lo));
        table[start..].iter().take_while(|&&(l, c, _)| l == line && c <= hi).map(|&(_, _, id)| id).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_diagonal_and_duplicate_edges() {
        let v = vec![(Point::new(0, 0), PointClass::Original), (Point::new(1, 1), PointClass::Original)];
        assert!(Network::new(v.clone(), vec![(0, 1)]).is_err());
        let v = vec![(Point::new(0, 0), PointClass::Original), (Point::new(0, 1), PointClass::Original)];
        assert!(Network::new(v.clone(), vec![(0, 1), (1, 0)]).is_err());
        assert!(Network::new(v, vec![(0, 1)]).is_ok());
    }

    #[test]
    fn subdivision_splits_at_interior_vertices() {
        let mut g = GraphBuilder::new();
        let a = g.add_vertex(Point::new(0, 0), PointClass::Original);
        let m = g.add_vertex(Point::new(2, 0), PointClass::Steiner);
        let b = g.add_vertex(Point::new(5, 0), PointClass::Original);
        let lines = LineIndex::build(&g);
        g.subdivide(&[Segment::new(Point::new(0, 0), Point::new(5, 0))], &lines);
        assert!(g.has_edge(a, m) && g.has_edge(m, b) && !g.has_edge(a, b));
        g.smooth_out(m);
        assert!(g.has_edge(a, b));
        let net = g.finish(&[], |p| p).unwrap();
        assert_eq!(net.vertex_count(), 2);
        assert_eq!(net.edges(), &[(0, 1)]);
    }
}
