//! Divide-and-conquer Manhattan network for arbitrary point sets: project
//! every point horizontally onto a vertical line at the median x, join the
//! projections along that line, and recurse on both sides.
//!
//! The result has Θ(n log n) vertices and is in general not planar.

use crate::error::{Error, Result};
use crate::geometry::{Point, PointClass};
use crate::histogram::Segment;
use crate::network::{GraphBuilder, LineIndex, Network};

pub fn build_baseline(points: &[Point]) -> Result<Network> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePoint(w[0]));
    }

    let mut g = GraphBuilder::new();
    let originals: Vec<usize> = points.iter().map(|&p| g.add_vertex(p, PointClass::Original)).collect();
    let mut segments = Vec::new();
    split(&sorted, &mut g, &mut segments);
    let lines = LineIndex::build(&g);
    g.subdivide(&segments, &lines);
    g.finish(&originals, |p| p)
}

/// `pts` is sorted by x. Points on the median line are not passed down.
fn split(pts: &[Point], g: &mut GraphBuilder, segments: &mut Vec<Segment>) {
    if pts.len() <= 1 {
        return;
    }
    let m = pts[(pts.len() - 1) / 2].x;
    let (mut lo, mut hi) = (i64::MAX, i64::MIN);
    for &p in pts {
        let foot = Point::new(m, p.y);
        g.add_vertex(foot, PointClass::Steiner);
        if foot != p {
            segments.push(Segment::new(p, foot));
        }
        lo = lo.min(p.y);
        hi = hi.max(p.y);
    }
    segments.push(Segment::new(Point::new(m, lo), Point::new(m, hi)));
    let left = pts.partition_point(|p| p.x < m);
    let right = pts.partition_point(|p| p.x <= m);
    split(&pts[..left], g, segments);
    split(&pts[right..], g, segments);
}
