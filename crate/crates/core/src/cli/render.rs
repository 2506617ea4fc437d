//! SVG and DOT output.

use std::fmt::Write;

use crate::geometry::PointClass;
use crate::network::Network;

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 20.0;
const EDGE_COLOR: &str = "#444444";
const EDGE_WIDTH: f64 = 1.0;
const ORIGINAL_COLOR: &str = "#1f4fd8";
const STEINER_COLOR: &str = "#d8261f";
const ORIGINAL_RADIUS: f64 = 4.0;
const STEINER_RADIUS: f64 = 2.5;

/// Network drawn into a fixed 800-unit canvas, y axis pointing up. Input
/// points are blue, Steiner points red.
pub fn to_svg(net: &Network) -> String {
    let pts: Vec<_> = net.vertices().iter().map(|v| v.point).collect();
    let (min_x, max_x) = (pts.iter().map(|p| p.x).min().unwrap_or(0), pts.iter().map(|p| p.x).max().unwrap_or(0));
    let (min_y, max_y) = (pts.iter().map(|p| p.y).min().unwrap_or(0), pts.iter().map(|p| p.y).max().unwrap_or(0));
    let span = (max_x - min_x).max(max_y - min_y).max(1) as f64;
    let scale = (CANVAS - 2.0 * MARGIN) / span;
    let sx = |x: i64| MARGIN + (x - min_x) as f64 * scale;
    let sy = |y: i64| CANVAS - MARGIN - (y - min_y) as f64 * scale;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(s, r#"<g stroke="{EDGE_COLOR}" stroke-width="{EDGE_WIDTH}">"#).unwrap();
    for &(a, b) in net.edges() {
        let (p, q) = (net.point(a), net.point(b));
        writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, sx(p.x), sy(p.y), sx(q.x), sy(q.y))
            .unwrap();
    }
    s.push_str("</g>\n");
    // Steiner points first so input points stay on top
    for class in [PointClass::Steiner, PointClass::Original] {
        let (color, r) = match class {
            PointClass::Original => (ORIGINAL_COLOR, ORIGINAL_RADIUS),
            PointClass::Steiner => (STEINER_COLOR, STEINER_RADIUS),
        };
        writeln!(s, r#"<g fill="{color}">"#).unwrap();
        for v in net.vertices().iter().filter(|v| v.class == class) {
            writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="{r}"/>"#, sx(v.point.x), sy(v.point.y)).unwrap();
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

pub fn to_dot(net: &Network) -> String {
    let mut s = String::from("graph network {\n");
    for v in net.vertices() {
        let kind = match v.class {
            PointClass::Original => "original",
            PointClass::Steiner => "steiner",
        };
        writeln!(s, "  {} [label=\"{},{}\" kind={kind}];", v.id, v.point.x, v.point.y).unwrap();
    }
    for &(a, b) in net.edges() {
        writeln!(s, "  {a} -- {b};").unwrap();
    }
    s.push_str("}\n");
    s
}
