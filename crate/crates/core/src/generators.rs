//! Point-set families: the square boundary with its explicit network, the
//! diagonal staircase, and seeded random convex sets.

use std::f64::consts::TAU;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{strict_convex_hull, Point, PointClass, MAX_INPUT_COORD};
use crate::histogram::Segment;
use crate::network::{GraphBuilder, LineIndex, Network};

/// Sampling rounds before giving up on reaching `n` hull points.
const MAX_ROUNDS: usize = 64;

fn check_scale(n: usize, scale: i64) -> Result<i64> {
    if n == 0 || scale <= 0 || scale > MAX_INPUT_COORD || scale % n as i64 != 0 {
        return Err(Error::BadScale { n, scale });
    }
    Ok(scale / n as i64)
}

/// The 4(n-1) points `(i/n, 0), (i/n, 1), (0, i/n), (1, i/n)` for
/// `i = 1..n-1`, with the unit square scaled to `scale`.
pub fn gen_square_boundary(n: usize, scale: i64) -> Result<Vec<Point>> {
    let step = check_scale(n, scale)?;
    let mut out = Vec::with_capacity(4 * n.saturating_sub(1));
    for i in 1..n as i64 {
        let c = i * step;
        out.extend([Point::new(c, 0), Point::new(c, scale), Point::new(0, c), Point::new(scale, c)]);
    }
    Ok(out)
}

/// Explicit network for the square boundary: the four corners, the boundary
/// cycle through every point, and one chord between each pair of opposite
/// points.
pub fn build_square_network(n: usize, scale: i64) -> Result<Network> {
    let points = gen_square_boundary(n, scale)?;
    let mut g = GraphBuilder::new();
    let originals: Vec<usize> = points.iter().map(|&p| g.add_vertex(p, PointClass::Original)).collect();
    let corners = [(0, 0), (0, scale), (scale, 0), (scale, scale)].map(Point::from);
    for c in corners {
        g.add_vertex(c, PointClass::Steiner);
    }
    let [c00, c01, c10, c11] = corners;
    let mut segments =
        vec![Segment::new(c00, c10), Segment::new(c10, c11), Segment::new(c11, c01), Segment::new(c01, c00)];
    for p in points.chunks(4) {
        segments.push(Segment::new(p[0], p[1]));
        segments.push(Segment::new(p[2], p[3]));
    }
    let lines = LineIndex::build(&g);
    g.subdivide(&segments, &lines);
    g.finish(&originals, |p| p)
}

/// `(1, 1), (2, 2), ..., (n, n)`.
pub fn gen_diagonal(n: usize) -> Vec<Point> {
    (1..=n as i64).map(|i| Point::new(i, i)).collect()
}

/// Staircase through points increasing in both coordinates: consecutive
/// points are joined through the corner `(x(next), y(prev))`.
pub fn build_staircase_network(points: &[Point]) -> Result<Network> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0].x >= w[1].x || w[0].y >= w[1].y {
            return Err(Error::BadParams(format!("{} and {} do not form an increasing staircase", w[0], w[1])));
        }
    }
    let mut g = GraphBuilder::new();
    let originals: Vec<usize> = points.iter().map(|&p| g.add_vertex(p, PointClass::Original)).collect();
    let mut segments = Vec::with_capacity(2 * sorted.len());
    for w in sorted.windows(2) {
        let corner = Point::new(w[1].x, w[0].y);
        g.add_vertex(corner, PointClass::Steiner);
        segments.push(Segment::new(w[0], corner));
        segments.push(Segment::new(corner, w[1]));
    }
    let lines = LineIndex::build(&g);
    g.subdivide(&segments, &lines);
    g.finish(&originals, |p| p)
}

/// `n` integer points in strictly convex position near the circle of the
/// given radius around the origin, in anticlockwise hull order.
///
/// Rounded circle points are pooled and reduced to their strict hull until
/// at least `n` survive; `n` of them are then kept at random.
pub fn gen_random_convex(n: usize, seed: u64, radius: i64) -> Result<Vec<Point>> {
    if n == 0 {
        return Err(Error::BadParams("n must be positive".into()));
    }
    if radius <= 0 || radius > MAX_INPUT_COORD {
        return Err(Error::BadParams(format!("radius {radius} outside 1..={MAX_INPUT_COORD}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = radius as f64;
    let batch = 2 * n.max(8);
    let mut pool: Vec<Point> = Vec::with_capacity(2 * batch);
    for _ in 0..MAX_ROUNDS {
        for _ in 0..batch {
            let theta = rng.gen_range(0.0..TAU);
            pool.push(Point::new((r * theta.cos()).round() as i64, (r * theta.sin()).round() as i64));
        }
        pool = strict_convex_hull(&pool);
        if pool.len() >= n {
            let mut keep = index::sample(&mut rng, pool.len(), n).into_vec();
            keep.sort_unstable();
            return Ok(keep.into_iter().map(|i| pool[i]).collect());
        }
    }
    Err(Error::CannotReachN { n, radius })
}
