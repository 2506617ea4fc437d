//! The ortho-convex polygon spanned by a convex point set: four xy-monotone
//! staircase chains through the input points.

use crate::error::{Error, Result};
use crate::geometry::{ConvexInput, Point, PointClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainKind {
    /// From the rightmost point up to the topmost.
    RT,
    /// From the topmost point to the leftmost.
    TL,
    /// From the leftmost point down to the bottommost.
    LB,
    /// From the bottommost point to the rightmost.
    BR,
}

impl ChainKind {
    pub const ALL: [ChainKind; 4] = [ChainKind::TL, ChainKind::LB, ChainKind::BR, ChainKind::RT];

    fn bit(self) -> u8 {
        match self {
            ChainKind::TL => 1,
            ChainKind::LB => 2,
            ChainKind::BR => 4,
            ChainKind::RT => 8,
        }
    }

    /// Required signs of (dx, dy) between consecutive chain points.
    fn direction(self) -> (i64, i64) {
        match self {
            ChainKind::RT => (-1, 1),
            ChainKind::TL => (-1, -1),
            ChainKind::LB => (1, -1),
            ChainKind::BR => (1, 1),
        }
    }

    /// Outward corner between consecutive points `a` and `b` of the chain.
    fn corner(self, a: Point, b: Point) -> Point {
        match self {
            ChainKind::RT | ChainKind::LB => Point::new(a.x, b.y),
            ChainKind::TL | ChainKind::BR => Point::new(b.x, a.y),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryVertex {
    pub point: Point,
    pub class: PointClass,
    chains: u8,
}

impl BoundaryVertex {
    pub fn in_chain(&self, kind: ChainKind) -> bool {
        self.chains & kind.bit() != 0
    }
}

/// Boundary cycle of the ortho-convex polygon, anticlockwise from t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoPolygon {
    pub boundary: Vec<BoundaryVertex>,
    /// Boundary position of each canonical input point.
    pub original_at: Vec<usize>,
}

impl OrthoPolygon {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn point(&self, i: usize) -> Point {
        self.boundary[i % self.boundary.len()].point
    }

    /// Boundary edges as point pairs, closing the cycle.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let m = self.boundary.len();
        (0..m).map(move |i| (self.boundary[i].point, self.boundary[(i + 1) % m].point))
    }

    pub fn steiner_count(&self) -> usize {
        self.boundary.iter().filter(|v| v.class == PointClass::Steiner).count()
    }
}

/// Staircase through `points` for one chain, with a Steiner corner between
/// every consecutive pair that is not already axis-aligned.
pub fn build_chain(points: &[Point], kind: ChainKind) -> Result<Vec<(Point, PointClass)>> {
    let (sx, sy) = kind.direction();
    let mut out = Vec::with_capacity(points.len() * 2);
    for (j, &p) in points.iter().enumerate() {
        if let Some(&prev) = j.checked_sub(1).map(|i| &points[i]) {
            if (p.x - prev.x) * sx < 0 || (p.y - prev.y) * sy < 0 {
                return Err(Error::MonotonicityViolated(kind));
            }
            if prev.x != p.x && prev.y != p.y {
                out.push((kind.corner(prev, p), PointClass::Steiner));
            }
        }
        out.push((p, PointClass::Original));
    }
    Ok(out)
}

pub fn build_ocp(input: &ConvexInput) -> Result<OrthoPolygon> {
    let pts = &input.points;
    let n = pts.len();
    if n < 2 {
        return Err(Error::InternalGeometry("polygon needs at least two points".into()));
    }
    let (t, l, b, r) = (input.top, input.left, input.bottom, input.right);
    let mut rt: Vec<Point> = pts[r..].to_vec();
    rt.push(pts[t]);
    let chains: [(ChainKind, Vec<Point>); 4] = [
        (ChainKind::TL, pts[t..=l].to_vec()),
        (ChainKind::LB, pts[l..=b].to_vec()),
        (ChainKind::BR, pts[b..=r].to_vec()),
        (ChainKind::RT, rt),
    ];

    let mut boundary: Vec<BoundaryVertex> = Vec::with_capacity(2 * n);
    for (kind, chain_pts) in &chains {
        let chain = build_chain(chain_pts, *kind)?;
        for (i, (point, class)) in chain.into_iter().enumerate() {
            if i == 0 {
                // shared endpoint with the previous chain
                match boundary.last_mut() {
                    Some(last) if last.point == point => {
                        last.chains |= kind.bit();
                        continue;
                    }
                    _ => {}
                }
            }
            boundary.push(BoundaryVertex { point, class, chains: kind.bit() });
        }
    }
    // RT ends at t, which opened the cycle.
    if boundary.len() > 1 && boundary.last().map(|v| v.point) == Some(boundary[0].point) {
        let last = boundary.pop().unwrap();
        boundary[0].chains |= last.chains;
    }

    let mut original_at = vec![usize::MAX; n];
    let mut k = 0;
    for (pos, v) in boundary.iter().enumerate() {
        if v.class == PointClass::Original {
            original_at[k] = pos;
            k += 1;
        }
    }
    if k != n {
        return Err(Error::InternalGeometry(format!("boundary holds {k} of {n} input points")));
    }
    Ok(OrthoPolygon { boundary, original_at })
}
