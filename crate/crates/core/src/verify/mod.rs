//! Exact checks of a constructed network: Manhattan distances, planarity,
//! size bounds and L2 stretch.

mod planarity;

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{l1_distance, Point};
use crate::network::Network;

pub use planarity::{check_planarity, euler_certificate, euler_check, planarity, Embedding, PlanarityVerdict};

/// Single-source shortest path lengths; `u64::MAX` marks unreachable.
pub fn dijkstra(net: &Network, source: usize) -> Vec<u64> {
    let mut dist = vec![u64::MAX; net.vertex_count()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0;
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in net.neighbors(u) {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist
}

fn terminal_ids(net: &Network, terminals: &[Point]) -> Result<Vec<usize>> {
    terminals.iter().map(|&p| net.vertex_id(p).ok_or(Error::PointNotInNetwork(p))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub p: Point,
    pub q: Point,
    /// Graph distance, absent when q is unreachable from p.
    pub found: Option<u64>,
    pub required: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManhattanReport {
    pub ok: bool,
    pub pairs: u64,
    pub violations: Vec<Violation>,
}

/// Compares the graph distance of every terminal pair with its L1 distance.
pub fn check_manhattan(net: &Network, terminals: &[Point]) -> Result<ManhattanReport> {
    let ids = terminal_ids(net, terminals)?;
    let violations: Vec<Violation> = (0..ids.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let dist = dijkstra(net, ids[i]);
            let ids = &ids;
            (i + 1..ids.len()).filter_map(move |j| {
                let (p, q) = (terminals[i], terminals[j]);
                let required = l1_distance(p, q);
                let d = dist[ids[j]];
                (d != required).then(|| Violation { p, q, found: (d != u64::MAX).then_some(d), required })
            })
        })
        .collect();
    let k = ids.len() as u64;
    Ok(ManhattanReport { ok: violations.is_empty(), pairs: k * k.saturating_sub(1) / 2, violations })
}

/// Exact maximum over terminal pairs of W(p, q)^2 / |pq|_2^2. Pairs with
/// coincident points are skipped; an unreachable pair yields `None`. With no
/// pairs the result is 0.
pub fn max_stretch_sq(net: &Network, terminals: &[Point]) -> Result<Option<Ratio<u128>>> {
    let ids = terminal_ids(net, terminals)?;
    let per_source: Vec<Option<Ratio<u128>>> = (0..ids.len())
        .into_par_iter()
        .map(|i| {
            let dist = dijkstra(net, ids[i]);
            let mut best = Ratio::from_integer(0u128);
            for j in i + 1..ids.len() {
                let (p, q) = (terminals[i], terminals[j]);
                let (dx, dy) = ((p.x - q.x).unsigned_abs() as u128, (p.y - q.y).unsigned_abs() as u128);
                if dx == 0 && dy == 0 {
                    continue;
                }
                let w = dist[ids[j]];
                if w == u64::MAX {
                    return None;
                }
                let w = w as u128;
                best = best.max(Ratio::new(w * w, dx * dx + dy * dy));
            }
            Some(best)
        })
        .collect();
    Ok(per_source.into_iter().try_fold(Ratio::from_integer(0u128), |acc, r| r.map(|r| acc.max(r))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    Manhattan,
    Planarity,
    Size,
    Spanner,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Manhattan, Check::Planarity, Check::Size, Check::Spanner];

    pub fn name(self) -> &'static str {
        match self {
            Check::Manhattan => "manhattan",
            Check::Planarity => "planarity",
            Check::Size => "size",
            Check::Spanner => "spanner",
        }
    }

    pub fn parse(s: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanarityReport {
    pub planar: bool,
    /// Face-trace certificate of the embedding, absent for nonplanar graphs.
    pub certified: Option<bool>,
    pub face_count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeReport {
    pub n: usize,
    pub vertices: usize,
    pub edges: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpannerReport {
    /// "num/den", or absent when some pair is disconnected.
    pub max_stretch_sq: Option<String>,
    pub ok: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timings {
    pub manhattan_ms: Option<f64>,
    pub planarity_ms: Option<f64>,
    pub spanner_ms: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub manhattan: Option<ManhattanReport>,
    pub planarity: Option<PlanarityReport>,
    pub size: Option<SizeReport>,
    pub spanner: Option<SpannerReport>,
    #[serde(skip)]
    pub timings: Timings,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.manhattan.as_ref().is_none_or(|m| m.ok)
            && self.planarity.as_ref().is_none_or(|p| p.planar && p.certified == Some(true))
            && self.size.as_ref().is_none_or(|s| s.ok)
            && self.spanner.as_ref().is_none_or(|s| s.ok)
    }
}

fn elapsed_ms(start: Instant) -> Option<f64> {
    Some(start.elapsed().as_secs_f64() * 1e3)
}

/// Runs the selected checks. The size check uses the bounds 4n vertices and
/// 5n edges for n terminals.
pub fn verify(net: &Network, terminals: &[Point], checks: &[Check]) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    if checks.contains(&Check::Manhattan) {
        let start = Instant::now();
        report.manhattan = Some(check_manhattan(net, terminals)?);
        report.timings.manhattan_ms = elapsed_ms(start);
    }
    if checks.contains(&Check::Planarity) {
        let start = Instant::now();
        let verdict = check_planarity(net);
        report.planarity = Some(match verdict.embedding() {
            Some(emb) => PlanarityReport {
                planar: true,
                certified: Some(euler_certificate(net, emb)?),
                face_count: Some(emb.face_count),
            },
            None => PlanarityReport { planar: false, certified: None, face_count: None },
        });
        report.timings.planarity_ms = elapsed_ms(start);
    }
    if checks.contains(&Check::Size) {
        let n = terminals.len();
        let (vertices, edges) = (net.vertex_count(), net.edge_count());
        report.size = Some(SizeReport { n, vertices, edges, ok: vertices <= 4 * n && edges <= 5 * n });
    }
    if checks.contains(&Check::Spanner) {
        let start = Instant::now();
        let max = max_stretch_sq(net, terminals)?;
        report.spanner = Some(SpannerReport {
            max_stretch_sq: max.map(|r| format!("{}/{}", r.numer(), r.denom())),
            ok: max.is_some_and(|r| r <= Ratio::from_integer(2)),
        });
        report.timings.spanner_ms = elapsed_ms(start);
    }
    Ok(report)
}
