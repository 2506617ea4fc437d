//! Histogram partition of the ortho-convex polygon.
//!
//! Cuts alternate: L1 drops vertically from t to the bottom boundary, L2 runs
//! right from there to the right boundary, L3 drops again, and so on, until
//! the cuts see every input point. The cut endpoints march monotonically
//! along the bottom and right boundary paths, so both ray casts are served by
//! forward-only cursors and the whole partition is linear in the polygon size.

use crate::error::{Error, Result};
use crate::geometry::{ConvexInput, Point};
use crate::ocp::OrthoPolygon;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CutOrientation {
    Vertical,
    Horizontal,
}

/// One cut `L_i = q_{i-1} q_i` (with `q_0 = t`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutSegment {
    /// 1-based position in the cut sequence.
    pub index: usize,
    pub orientation: CutOrientation,
    pub start: Point,
    pub end: Point,
}

impl CutSegment {
    pub fn segment(&self) -> Segment {
        Segment::new(self.start, self.end)
    }
}

/// Closed axis-parallel segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Self { a, b }
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn is_vertical(&self) -> bool {
        self.a.x == self.b.x && self.a.y != self.b.y
    }

    pub fn is_horizontal(&self) -> bool {
        self.a.y == self.b.y && self.a.x != self.b.x
    }

    pub fn contains(&self, p: Point) -> bool {
        let (x0, x1) = (self.a.x.min(self.b.x), self.a.x.max(self.b.x));
        let (y0, y1) = (self.a.y.min(self.b.y), self.a.y.max(self.b.y));
        (self.a.x == self.b.x || self.a.y == self.b.y) && (x0..=x1).contains(&p.x) && (y0..=y1).contains(&p.y)
    }

    /// Foot of the perpendicular from `q`, if it lands on the closed segment.
    pub fn project(&self, q: Point) -> Option<Point> {
        if self.is_vertical() {
            let foot = Point::new(self.a.x, q.y);
            self.contains(foot).then_some(foot)
        } else if self.is_horizontal() {
            let foot = Point::new(q.x, self.a.y);
            self.contains(foot).then_some(foot)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    Below,
}

/// A histogram of the partition, named by its base cut and the side of the
/// base its interior lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HistogramId {
    pub cut: usize,
    pub side: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    /// Last cut vertical, the one before it sees b.
    Type1,
    /// Last cut vertical, the one before it misses b.
    Type2,
    /// Last cut horizontal, the one before it sees r.
    Type3,
    /// Last cut horizontal, the one before it misses r.
    Type4,
    DegenerateK1,
    DegenerateK2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistogramPartition {
    pub cuts: Vec<CutSegment>,
    /// Histogram of each canonical input point.
    pub assignment: Vec<HistogramId>,
    pub termination: Termination,
    /// Boundary vertices visited by the ray-cast cursors.
    pub walk_steps: usize,
}

impl HistogramPartition {
    pub fn k(&self) -> usize {
        self.cuts.len()
    }

    pub fn cut(&self, index: usize) -> &CutSegment {
        &self.cuts[index - 1]
    }

    pub fn last(&self) -> &CutSegment {
        self.cuts.last().expect("partition has at least one cut")
    }

    pub fn cut_points(&self) -> impl Iterator<Item = Point> + '_ {
        self.cuts.iter().map(|c| c.end)
    }

    /// Whether histogram `h` contains `p` under the closed set definitions.
    pub fn histogram_contains(&self, h: HistogramId, top: Point, p: Point) -> bool {
        let cut = self.cut(h.cut);
        let (q_prev, q) = (cut.start, cut.end);
        match (h.cut, h.side) {
            (1, Side::Left) => (q.y..=top.y).contains(&p.y) && p.x <= q.x,
            (1, Side::Right) => (q.y..=top.y).contains(&p.y) && p.x >= q.x,
            (i, Side::Below) if i % 2 == 0 => (q_prev.x..=q.x).contains(&p.x) && p.y <= q.y,
            (i, Side::Right) if i % 2 == 1 => (q.y..=q_prev.y).contains(&p.y) && p.x >= q.x,
            _ => false,
        }
    }

    /// The histograms that exist in this partition, in construction order.
    pub fn histograms(&self) -> Vec<HistogramId> {
        let mut out = Vec::with_capacity(self.cuts.len() + 1);
        for c in &self.cuts {
            match c.index {
                1 => {
                    out.push(HistogramId { cut: 1, side: Side::Left });
                    out.push(HistogramId { cut: 1, side: Side::Right });
                }
                i if i % 2 == 0 => out.push(HistogramId { cut: i, side: Side::Below }),
                i => out.push(HistogramId { cut: i, side: Side::Right }),
            }
        }
        out
    }
}

/// Forward-only cursor answering "lowest boundary point at x = X" on the
/// bottom path (l .. r, x nondecreasing) for nondecreasing X.
struct BottomCursor<'a> {
    path: &'a [Point],
    j: usize,
}

impl BottomCursor<'_> {
    fn lowest_at(&mut self, x: i64, steps: &mut usize) -> Option<i64> {
        let path = self.path;
        while self.j + 1 < path.len() && path[self.j + 1].x < x {
            self.j += 1;
            *steps += 1;
        }
        let mut lo = (path[self.j].x == x).then_some(path[self.j].y);
        let mut k = self.j + 1;
        while k < path.len() && path[k].x == x {
            lo = Some(lo.map_or(path[k].y, |y: i64| y.min(path[k].y)));
            k += 1;
            *steps += 1;
        }
        match lo {
            Some(y) => Some(y),
            None if self.j + 1 < path.len() && path[self.j].x < x && x < path[self.j + 1].x => Some(path[self.j].y),
            None => None,
        }
    }
}

/// Forward-only cursor answering "rightmost boundary point at y = Y" on the
/// right path (t .. r .. b walked clockwise, y nonincreasing) for
/// nonincreasing Y.
struct RightCursor {
    path: Vec<Point>,
    j: usize,
}

impl RightCursor {
    fn rightmost_at(&mut self, y: i64, steps: &mut usize) -> Option<i64> {
        let path = &self.path;
        while self.j + 1 < path.len() && path[self.j + 1].y > y {
            self.j += 1;
            *steps += 1;
        }
        let mut hi = (path[self.j].y == y).then_some(path[self.j].x);
        let mut k = self.j + 1;
        while k < path.len() && path[k].y == y {
            hi = Some(hi.map_or(path[k].x, |x: i64| x.max(path[k].x)));
            k += 1;
            *steps += 1;
        }
        match hi {
            Some(x) => Some(x),
            None if self.j + 1 < path.len() && path[self.j].y > y && y > path[self.j + 1].y => Some(path[self.j].x),
            None => None,
        }
    }
}

/// Lowest y among input points strictly right of X, for nondecreasing X.
struct UnseenProbe<'a> {
    input: &'a ConvexInput,
    j: usize,
}

impl UnseenProbe<'_> {
    fn min_y_right_of(&mut self, x: Option<i64>, steps: &mut usize) -> Option<i64> {
        let pts = &self.input.points;
        let b = pts[self.input.bottom];
        match x {
            None => Some(b.y),
            Some(x) if x < b.x => Some(b.y),
            Some(x) => {
                if self.j < self.input.bottom {
                    self.j = self.input.bottom;
                }
                while self.j <= self.input.right && pts[self.j].x <= x {
                    self.j += 1;
                    *steps += 1;
                }
                (self.j <= self.input.right).then(|| pts[self.j].y)
            }
        }
    }
}

pub fn partition(ocp: &OrthoPolygon, input: &ConvexInput) -> Result<HistogramPartition> {
    let n = input.len();
    if n < 3 {
        return Err(Error::InternalGeometry("histogram partition needs n >= 3".into()));
    }
    let pts = &input.points;
    let top = pts[input.top];
    let m = ocp.len();
    let pos = |i: usize| ocp.original_at[i];

    let bottom_path: Vec<Point> = (pos(input.left)..=pos(input.right)).map(|i| ocp.point(i)).collect();
    let right_path: Vec<Point> = {
        let stop = pos(input.bottom);
        let mut path = vec![ocp.point(0)];
        let mut i = m;
        while i > stop {
            i -= 1;
            path.push(ocp.point(i));
        }
        path
    };
    let mut bottom = BottomCursor { path: &bottom_path, j: 0 };
    let mut right = RightCursor { path: right_path, j: 0 };
    let mut probe = UnseenProbe { input, j: 0 };
    let mut steps = 0usize;

    let mut cuts: Vec<CutSegment> = Vec::new();
    let mut q_prev = top;
    loop {
        let index = cuts.len() + 1;
        if index > n + 1 {
            return Err(Error::InternalGeometry("cut sequence does not terminate".into()));
        }
        let (orientation, q) = if index % 2 == 1 {
            let y = bottom
                .lowest_at(q_prev.x, &mut steps)
                .ok_or_else(|| Error::InternalGeometry(format!("no bottom boundary below {q_prev}")))?;
            (CutOrientation::Vertical, Point::new(q_prev.x, y))
        } else {
            let x = right
                .rightmost_at(q_prev.y, &mut steps)
                .ok_or_else(|| Error::InternalGeometry(format!("no right boundary beside {q_prev}")))?;
            (CutOrientation::Horizontal, Point::new(x, q_prev.y))
        };
        if q == q_prev {
            return Err(Error::InternalGeometry(format!("cut L{index} has zero length at {q}")));
        }
        cuts.push(CutSegment { index, orientation, start: q_prev, end: q });

        // Points not yet seen form the open quadrant {x > X, y < Y}.
        let (x_bound, y_bound) = match orientation {
            CutOrientation::Vertical => ((index >= 3).then_some(q_prev.x), q.y),
            CutOrientation::Horizontal => (Some(q.x), q_prev.y),
        };
        let all_seen = probe.min_y_right_of(x_bound, &mut steps).is_none_or(|y| y >= y_bound);
        if all_seen {
            break;
        }
        q_prev = q;
    }

    let mut part = HistogramPartition {
        cuts,
        assignment: Vec::with_capacity(n),
        termination: Termination::DegenerateK1,
        walk_steps: steps,
    };
    part.assignment = assign(&part, input)?;
    part.termination = match part.k() {
        1 => Termination::DegenerateK1,
        2 => Termination::DegenerateK2,
        _ => classify_termination(&part, input),
    };
    Ok(part)
}

/// First histogram (in construction order) whose set contains each point.
fn assign(part: &HistogramPartition, input: &ConvexInput) -> Result<Vec<HistogramId>> {
    let top = input.points[input.top];
    let q1 = part.cut(1).end;
    // x(q_2) < x(q_4) < ... and y(q_3) > y(q_5) > ...
    let even: Vec<(usize, i64)> = part.cuts.iter().filter(|c| c.index % 2 == 0).map(|c| (c.index, c.end.x)).collect();
    let odd: Vec<(usize, i64)> =
        part.cuts.iter().filter(|c| c.index % 2 == 1 && c.index >= 3).map(|c| (c.index, c.end.y)).collect();
    input
        .points
        .iter()
        .map(|&p| {
            if p.y >= q1.y {
                let side = if p.x <= q1.x { Side::Left } else { Side::Right };
                return Ok(HistogramId { cut: 1, side });
            }
            let mut candidates: Vec<HistogramId> = Vec::with_capacity(4);
            let m = even.partition_point(|&(_, x)| x < p.x);
            for &(i, _) in even.iter().skip(m.saturating_sub(1)).take(2) {
                candidates.push(HistogramId { cut: i, side: Side::Below });
            }
            let m = odd.partition_point(|&(_, y)| y > p.y);
            for &(i, _) in odd.iter().skip(m.saturating_sub(1)).take(2) {
                candidates.push(HistogramId { cut: i, side: Side::Right });
            }
            candidates.sort_by_key(|h| h.cut);
            candidates
                .into_iter()
                .find(|&h| part.histogram_contains(h, top, p))
                .ok_or_else(|| Error::InternalGeometry(format!("no cut sees {p}")))
        })
        .collect()
}

/// Termination configuration from the orientation of the last cut and
/// whether the one before it sees b (vertical last cut) or r (horizontal).
pub fn classify_termination(part: &HistogramPartition, input: &ConvexInput) -> Termination {
    let k = part.k();
    if k < 2 {
        return Termination::DegenerateK1;
    }
    let prev = part.cut(k - 1).segment();
    match part.cut(k).orientation {
        CutOrientation::Vertical => {
            if prev.project(input.points[input.bottom]).is_some() {
                Termination::Type1
            } else {
                Termination::Type2
            }
        }
        CutOrientation::Horizontal => {
            if prev.project(input.points[input.right]).is_some() {
                Termination::Type3
            } else {
                Termination::Type4
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::canonicalize;
    use crate::ocp::build_ocp;

    fn pts(raw: &[(i64, i64)]) -> Vec<Point> {
        raw.iter().map(|&p| p.into()).collect()
    }

    fn run(raw: &[(i64, i64)]) -> (ConvexInput, HistogramPartition) {
        let input = canonicalize(&pts(raw)).unwrap();
        let ocp = build_ocp(&input).unwrap();
        let part = partition(&ocp, &input).unwrap();
        (input, part)
    }

    #[test]
    fn s4_single_cut() {
        let (input, part) = run(&[(0, 5), (-3, 2), (1, 0), (4, 3)]);
        assert_eq!(part.k(), 1);
        assert_eq!(part.cut(1).start, Point::new(0, 5));
        assert_eq!(part.cut(1).end, Point::new(0, 0));
        assert_eq!(part.termination, Termination::DegenerateK1);
        let left = HistogramId { cut: 1, side: Side::Left };
        let right = HistogramId { cut: 1, side: Side::Right };
        assert_eq!(part.assignment, vec![left, left, right, right]);
        // the closed sets overlap on L1 itself: t is in both
        let t = input.points[0];
        assert!(part.histogram_contains(left, t, t) && part.histogram_contains(right, t, t));
    }

    #[test]
    fn segment_projection() {
        let seg = Segment::new(Point::new(0, 0), Point::new(0, 5));
        assert_eq!(seg.project(Point::new(4, 3)), Some(Point::new(0, 3)));
        assert_eq!(seg.project(Point::new(4, 7)), None);
        assert_eq!(seg.project(Point::new(0, 2)), Some(Point::new(0, 2)));
    }

    #[test]
    fn diagonal_like_set_is_seen_quickly() {
        // strictly convex perturbation of the diagonal (the diagonal itself is collinear)
        let (_, part) = run(&[(1, 1), (2, 3), (3, 6), (4, 10), (5, 15)]);
        assert!(part.k() <= 2);
    }

    #[test]
    fn classify_k1() {
        let (input, part) = run(&[(0, 5), (-3, 2), (1, 0), (4, 3)]);
        assert_eq!(classify_termination(&part, &input), Termination::DegenerateK1);
    }
}
