//! Linear-size planar Manhattan network for a convex point set.
//!
//! The network is assembled on the histogram partition of the ortho-convex
//! polygon: the polygon boundary, the cuts, three short connector segments
//! e'1, e'2, e'3 from l, b, r to the bases of their histograms, and
//! orthogonal projections of every point onto the base of its histogram, onto
//! the next cut (its lid) and onto connectors starting in its histogram.
//! Boundary, cuts and connectors are split at every vertex on them; a
//! projection is a single edge from the point to its foot.
//!
//! Depending on how the partition ends, some connectors lose the edge at
//! their foot and the last cut is reduced to its kept vertices. Projections
//! are put on one of two pages (cut side or boundary side) and only chained
//! within a page, which keeps the drawing planar.

use crate::error::{Error, Result};
use crate::geometry::{l1_distance, ConvexInput, Point, PointClass};
use crate::histogram::{partition, HistogramId, HistogramPartition, Segment, Side, Termination};
use crate::network::{GraphBuilder, LineIndex, Network};
use crate::ocp::{build_ocp, OrthoPolygon};

/// Foot of the perpendicular from `q` onto `seg`, if it lies on the closed
/// segment.
pub fn project_point(q: Point, seg: Segment) -> Option<Point> {
    seg.project(q)
}

/// Intermediate products of a build, exposed for inspection and tests.
#[derive(Debug, Clone)]
pub struct BuildTrace {
    pub ocp: OrthoPolygon,
    pub partition: HistogramPartition,
    /// e'1, e'2, e'3 in the working frame (possibly degenerate).
    pub connectors: [Segment; 3],
    /// Number of projection segments added for each canonical point.
    pub projections_per_point: Vec<usize>,
}

pub fn build_network(input: &ConvexInput) -> Result<Network> {
    build_network_traced(input).map(|(net, _)| net)
}

pub fn build_network_traced(input: &ConvexInput) -> Result<(Network, Option<BuildTrace>)> {
    match input.len() {
        0 => Err(Error::EmptyInput),
        1 | 2 => small_network(input).map(|net| (net, None)),
        _ => assemble(input).map(|(net, trace)| (net, Some(trace))),
    }
}

fn small_network(input: &ConvexInput) -> Result<Network> {
    let mut g = GraphBuilder::new();
    let ids: Vec<usize> = input.points.iter().map(|&p| g.add_vertex(p, PointClass::Original)).collect();
    if let [a, b] = input.points[..] {
        let corner = Point::new(a.x, b.y);
        g.add_vertex(corner, PointClass::Steiner);
        let lines = LineIndex::build(&g);
        g.subdivide(&[Segment::new(a, corner), Segment::new(corner, b)], &lines);
    }
    g.finish(&originals_in_input_order(input, &ids), |p| input.to_input_frame(p))
}

fn originals_in_input_order(input: &ConvexInput, ids: &[usize]) -> Vec<usize> {
    let mut order: Vec<(usize, usize)> = input.source.iter().copied().zip(ids.iter().copied()).collect();
    order.sort_unstable();
    order.into_iter().map(|(_, id)| id).collect()
}

fn assemble(input: &ConvexInput) -> Result<(Network, BuildTrace)> {
    let pts = &input.points;
    let n = pts.len();
    let ocp = build_ocp(input)?;
    let part = partition(&ocp, input)?;
    let k = part.k();

    let mut g = GraphBuilder::new();
    let ids: Vec<usize> = pts.iter().map(|&p| g.add_vertex(p, PointClass::Original)).collect();
    for v in &ocp.boundary {
        g.add_vertex(v.point, v.class);
    }
    for q in part.cut_points() {
        g.add_vertex(q, PointClass::Steiner);
    }

    let boundary_segments: Vec<Segment> = ocp.edges().map(|(a, b)| Segment::new(a, b)).collect();
    let mut segments: Vec<Segment> = part.cuts.iter().map(|c| c.segment()).collect();

    let specials = [input.left, input.bottom, input.right];
    let special_hist: [HistogramId; 3] = specials.map(|i| part.assignment[i]);
    let mut connectors = [Segment::new(pts[0], pts[0]); 3];
    let mut feet = [pts[0]; 3];
    for (slot, &i) in specials.iter().enumerate() {
        let base = part.cut(special_hist[slot].cut).segment();
        let on_cut = part.cuts.iter().any(|c| c.segment().contains(pts[i]));
        let foot = if on_cut {
            pts[i]
        } else {
            base.project(pts[i])
                .ok_or_else(|| Error::InternalGeometry(format!("{} does not see its histogram base", pts[i])))?
        };
        g.add_vertex(foot, PointClass::Steiner);
        feet[slot] = foot;
        connectors[slot] = Segment::new(pts[i], foot);
        if pts[i] != foot {
            segments.push(connectors[slot]);
        }
    }

    let term = match part.termination {
        Termination::DegenerateK1 => Termination::Type2,
        Termination::DegenerateK2 => {
            if part.cut(1).segment().project(pts[input.right]).is_some() {
                Termination::Type3
            } else {
                Termination::Type4
            }
        }
        t => t,
    };
    let term = match term {
        Termination::Type1 if connectors[1].is_degenerate() => Termination::Type2,
        Termination::Type3 if connectors[2].is_degenerate() => Termination::Type4,
        t => t,
    };

    let trimmed = [
        true,
        matches!(term, Termination::Type1 | Termination::Type4),
        matches!(term, Termination::Type2 | Termination::Type3),
    ];
    let boundary_has = |p: Point| ocp.edges().any(|(a, b)| Segment::new(a, b).contains(p));
    // page 0 holds the cuts and everything attached to them, page 1 the rest
    let connector_page: [u8; 3] = std::array::from_fn(|j| if trimmed[j] || boundary_has(feet[j]) { 1 } else { 0 });
    let mut projection_edges: Vec<(Point, u8, Point)> = Vec::new();
    let mut projections_per_point = vec![0usize; n];
    let mut project = |g: &mut GraphBuilder, i: usize, onto: Segment, page: u8| {
        if let Some(foot) = onto.project(pts[i]) {
            if foot != pts[i] {
                g.add_vertex(foot, PointClass::Steiner);
                projection_edges.push((pts[i], page, foot));
                projections_per_point[i] += 1;
            }
        }
    };
    for i in 0..n {
        let h = part.assignment[i];
        // with the last cut cleared, nothing projects onto it
        let clears_last = matches!(term, Termination::Type1 | Termination::Type3);
        if !(clears_last && h.cut == k) {
            project(&mut g, i, part.cut(h.cut).segment(), 0);
        }
        if h.side != Side::Left && h.cut < k && !(clears_last && h.cut + 1 == k) {
            project(&mut g, i, part.cut(h.cut + 1).segment(), 1);
        }
        for slot in 0..3 {
            if special_hist[slot] == h && !connectors[slot].is_degenerate() {
                project(&mut g, i, connectors[slot], connector_page[slot]);
            }
        }
    }
    let last = part.last();
    let last_right = HistogramId { cut: k, side: Side::Right };
    let last_below = HistogramId { cut: k, side: Side::Below };
    if term == Termination::Type1 && !connectors[1].is_degenerate() {
        for i in 0..n {
            if part.assignment[i] == last_right {
                project(&mut g, i, connectors[1], connector_page[1]);
            }
        }
    }
    if term == Termination::Type3 && !connectors[2].is_degenerate() {
        for i in 0..n {
            if part.assignment[i] == last_below {
                project(&mut g, i, connectors[2], connector_page[2]);
            }
        }
    }

    let lines = LineIndex::build(&g);
    let on_boundary = g.subdivide(&boundary_segments, &lines);
    g.subdivide(&segments, &lines);
    // a trimmed connector loses the edge at its foot
    for slot in (0..3).filter(|&j| trimmed[j] && !connectors[j].is_degenerate()) {
        let seg = connectors[slot];
        let foot = g.id(feet[slot]).expect("connector foot is a vertex");
        let on = g.vertices_on(seg, &lines);
        let pos = on.iter().position(|&v| v == foot).expect("foot lies on its connector");
        let u = if pos == 0 { on.get(1) } else { on.get(pos - 1) };
        if let Some(&u) = u {
            if g.point(u) != seg.a {
                g.remove_edge(u, foot);
            }
        }
    }
    if matches!(term, Termination::Type1 | Termination::Type3) {
        let keep = [g.id(feet[2]), g.id(feet[1])];
        for v in g.vertices_on(last.segment(), &lines) {
            if !keep.contains(&Some(v)) && !on_boundary.contains(&v) {
                g.smooth_out(v);
            }
        }
    }

    // feet of one point in the same direction and page are chained nearest first
    let dir = |a: Point, b: Point| ((b.x - a.x).signum(), (b.y - a.y).signum());
    projection_edges.sort_by_key(|&(a, page, b)| (a, dir(a, b), page, l1_distance(a, b)));
    let mut prev: Option<(Point, u8, Point)> = None;
    for &(a, page, b) in &projection_edges {
        let from = match prev {
            Some((pa, pp, pb)) if pa == a && pp == page && dir(a, pb) == dir(a, b) && g.id(pb).is_some() => pb,
            _ => a,
        };
        prev = Some((a, page, b));
        let (Some(u), Some(v)) = (g.id(from), g.id(b)) else { continue };
        if !g.has_straight_path(u, v) {
            g.add_edge(u, v);
        }
    }

    let net = g.finish(&originals_in_input_order(input, &ids), |p| input.to_input_frame(p))?;
    Ok((net, BuildTrace { ocp, partition: part, connectors, projections_per_point }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::canonicalize;

    fn pts(raw: &[(i64, i64)]) -> Vec<Point> {
        raw.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn single_and_pair() {
        let net = build_network(&canonicalize(&pts(&[(3, 4)])).unwrap()).unwrap();
        assert_eq!((net.vertex_count(), net.edge_count()), (1, 0));

        let net = build_network(&canonicalize(&pts(&[(0, 0), (2, 1)])).unwrap()).unwrap();
        assert_eq!((net.vertex_count(), net.edge_count()), (3, 2));
        assert_eq!(net.total_length(), 3);

        let net = build_network(&canonicalize(&pts(&[(0, 0), (0, 5)])).unwrap()).unwrap();
        assert_eq!((net.vertex_count(), net.edge_count()), (2, 1));
    }

    #[test]
    fn originals_come_first_in_input_order() {
        let raw = pts(&[(1, 0), (4, 3), (0, 5), (-3, 2)]);
        let net = build_network(&canonicalize(&raw).unwrap()).unwrap();
        for (i, p) in raw.iter().enumerate() {
            assert_eq!(net.vertices()[i].point, *p);
            assert_eq!(net.vertices()[i].class, PointClass::Original);
        }
        assert!(net.vertices()[4..].iter().all(|v| v.class == PointClass::Steiner));
    }

    #[test]
    fn projection_examples() {
        let seg = Segment::new(Point::new(0, 0), Point::new(0, 5));
        assert_eq!(project_point(Point::new(4, 3), seg), Some(Point::new(0, 3)));
        assert_eq!(project_point(Point::new(4, 7), seg), None);
        assert_eq!(project_point(Point::new(0, 2), seg), Some(Point::new(0, 2)));
    }

    #[test]
    fn s4_distances() {
        use crate::verify::{check_manhattan, dijkstra};
        let s = pts(&[(0, 5), (-3, 2), (1, 0), (4, 3)]);
        let net = build_network(&canonicalize(&s).unwrap()).unwrap();
        assert!(check_manhattan(&net, &s).unwrap().ok);
        let from = dijkstra(&net, net.vertex_id(Point::new(4, 3)).unwrap());
        assert_eq!(from[net.vertex_id(Point::new(1, 0)).unwrap()], 6);
        assert_eq!(from[net.vertex_id(Point::new(-3, 2)).unwrap()], 8);

        // cutting the bottom boundary between (0, 0) and (1, 0) inflates a distance
        let (a, b) = (net.vertex_id(Point::new(0, 0)).unwrap(), net.vertex_id(Point::new(1, 0)).unwrap());
        let e = net.edges().iter().position(|&uv| uv == (a.min(b), a.max(b))).unwrap();
        let report = check_manhattan(&net.without_edge(e), &s).unwrap();
        assert!(!report.ok);
        assert!(report.violations.iter().all(|v| v.found.is_some_and(|d| d > v.required)));
    }

    #[test]
    fn s4_size() {
        let net = build_network(&canonicalize(&pts(&[(1, 0), (4, 3), (0, 5), (-3, 2)])).unwrap()).unwrap();
        assert!(net.vertex_count() <= 16);
        assert!(net.edge_count() <= 20);
        assert!(net.is_connected());
    }
}
