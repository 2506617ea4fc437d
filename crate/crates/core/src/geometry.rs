//! Exact integer primitives and canonical ordering of convex inputs.
//!
//! All construction happens on `i64` coordinates. Every Steiner point the
//! builders create has the form `(x(a), y(b))` for input points `a`, `b`, so
//! nothing ever leaves the integers and the Manhattan property can be checked
//! with zero tolerance.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest absolute coordinate accepted from user input.
pub const MAX_INPUT_COORD: i64 = 1 << 30;

/// Largest absolute coordinate allowed after internal transforms (mirroring
/// about `y = y(p1) + 1` can push a valid input slightly past the input limit).
pub const MAX_WORKING_COORD: i64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Self { x, y }
    }
}

/// Whether a vertex is one of the input terminals or an auxiliary point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointClass {
    Original,
    Steiner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

pub fn l1_distance(p: Point, q: Point) -> u64 {
    p.x.abs_diff(q.x) + p.y.abs_diff(q.y)
}

/// Sign of `(b - a) x (c - a)`.
pub fn orientation(a: Point, b: Point, c: Point) -> Orientation {
    match cross(a, b, c).cmp(&0) {
        Ordering::Greater => Orientation::Left,
        Ordering::Less => Orientation::Right,
        Ordering::Equal => Orientation::Collinear,
    }
}

pub(crate) fn cross(a: Point, b: Point, c: Point) -> i128 {
    let (abx, aby) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    let (acx, acy) = ((c.x - a.x) as i128, (c.y - a.y) as i128);
    abx * acy - aby * acx
}

/// Reflects every point across the horizontal line `y = c`.
pub fn reflect_about_horizontal(points: &[Point], c: i64) -> Result<Vec<Point>> {
    points
        .iter()
        .map(|p| {
            let y = c
                .checked_mul(2)
                .and_then(|c2| c2.checked_sub(p.y))
                .filter(|y| y.abs() <= MAX_WORKING_COORD)
                .ok_or(Error::CoordinateOutOfRange(*p))?;
            Ok(Point::new(p.x, y))
        })
        .collect()
}

/// Vertices of the convex hull in counter-clockwise order, starting at the
/// lexicographically smallest point. Collinear boundary points are dropped.
pub fn strict_convex_hull(points: &[Point]) -> Vec<Point> {
    let mut sorted: Vec<Point> = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() <= 2 {
        return sorted;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(sorted.len() + 1);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> =
            if pass == 0 { Box::new(sorted.iter()) } else { Box::new(sorted.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// A validated convex point set in the order the construction expects.
///
/// `points` runs anticlockwise along the hull from the topmost point (leftmost
/// among ties). When the raw input has `x(p1) > x(b)` the whole set is
/// reflected across `y = y(p1) + 1` first and `mirror_axis` records the line
/// so outputs can be mapped back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexInput {
    pub points: Vec<Point>,
    /// `source[i]` is the position of `points[i]` in the raw input.
    pub source: Vec<usize>,
    pub mirrored: bool,
    pub mirror_axis: Option<i64>,
    pub top: usize,
    pub left: usize,
    pub bottom: usize,
    pub right: usize,
}

impl ConvexInput {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The canonical points mapped back to raw-input coordinates.
    pub fn unmirrored_points(&self) -> Vec<Point> {
        self.points.iter().map(|&p| self.to_input_frame(p)).collect()
    }

    /// Maps a point of the working frame back to the caller's frame.
    pub fn to_input_frame(&self, p: Point) -> Point {
        match self.mirror_axis {
            Some(c) => Point::new(p.x, 2 * c - p.y),
            None => p,
        }
    }
}

/// Validates `raw` and returns it in canonical order.
pub fn canonicalize(raw: &[Point]) -> Result<ConvexInput> {
    if raw.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(&p) = raw.iter().find(|p| p.x.abs() > MAX_INPUT_COORD || p.y.abs() > MAX_INPUT_COORD) {
        return Err(Error::CoordinateOutOfRange(p));
    }
    let mut sorted = raw.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePoint(w[0]));
    }

    let tagged: Vec<(Point, usize)> = raw.iter().copied().zip(0..).collect();
    let ordered = anticlockwise_from_top(&tagged)?;
    let top = ordered[0].0;
    let bottom = ordered[extremes(&ordered).2].0;

    if top.x > bottom.x {
        let axis = top.y + 1;
        let pts: Vec<Point> = tagged.iter().map(|(p, _)| *p).collect();
        let reflected = reflect_about_horizontal(&pts, axis)?;
        let tagged: Vec<(Point, usize)> = reflected.into_iter().zip(0..).collect();
        let ordered = anticlockwise_from_top(&tagged)?;
        Ok(assemble(ordered, Some(axis)))
    } else {
        Ok(assemble(ordered, None))
    }
}

fn assemble(ordered: Vec<(Point, usize)>, mirror_axis: Option<i64>) -> ConvexInput {
    let (top, left, bottom, right) = extremes(&ordered);
    let (points, source) = ordered.into_iter().unzip();
    ConvexInput { points, source, mirrored: mirror_axis.is_some(), mirror_axis, top, left, bottom, right }
}

/// Indices of t, l, b, r: each is the first point met on the anticlockwise
/// walk from t that attains the extreme, with r searched from b onwards.
fn extremes(ordered: &[(Point, usize)]) -> (usize, usize, usize, usize) {
    let first =
        |pred: &dyn Fn(Point) -> bool, from: usize| (from..ordered.len()).find(|&i| pred(ordered[i].0)).unwrap_or(from);
    let min_x = ordered.iter().map(|(p, _)| p.x).min().unwrap_or(0);
    let max_x = ordered.iter().map(|(p, _)| p.x).max().unwrap_or(0);
    let min_y = ordered.iter().map(|(p, _)| p.y).min().unwrap_or(0);
    let left = first(&|p| p.x == min_x, 0);
    let bottom = first(&|p| p.y == min_y, left);
    let right = first(&|p| p.x == max_x, bottom);
    (0, left, bottom, right)
}

fn anticlockwise_from_top(tagged: &[(Point, usize)]) -> Result<Vec<(Point, usize)>> {
    let pts: Vec<Point> = tagged.iter().map(|(p, _)| *p).collect();
    let hull = strict_convex_hull(&pts);
    if hull.len() != pts.len() {
        let on_hull: HashSet<Point> = hull.iter().copied().collect();
        let offender = pts.iter().find(|p| !on_hull.contains(p)).copied().unwrap_or(pts[0]);
        return Err(Error::NotConvexPosition(offender));
    }
    let start = (0..hull.len()).max_by(|&i, &j| hull[i].y.cmp(&hull[j].y).then(hull[j].x.cmp(&hull[i].x))).unwrap_or(0);
    let mut by_point = tagged.to_vec();
    by_point.sort_unstable();
    Ok((0..hull.len())
        .map(|k| {
            let p = hull[(start + k) % hull.len()];
            by_point[by_point.partition_point(|&(q, _)| q < p)]
        })
        .collect())
}
