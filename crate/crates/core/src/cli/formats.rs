//! Points files and graph JSON.
//!
//! A points file holds one `x y` pair of decimal integers per line; `#`
//! starts a comment and blank lines are ignored. Graph JSON is an object
//! with `vertices` (`{id, x, y, kind}`, ids dense from 0) and `edges`
//! (`[id, id]` pairs). Edge lengths are implied by the coordinates.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::geometry::{Point, PointClass};
use crate::network::Network;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Points { line: usize, msg: String },
    #[error("graph json: {0}")]
    Graph(String),
}

pub fn parse_points(text: &str) -> Result<Vec<Point>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| FormatError::Points { line: i + 1, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [x, y] = fields[..] else {
            return Err(err(format!("expected two integers, found {} fields", fields.len())));
        };
        let parse = |s: &str| s.parse::<i64>().map_err(|e| err(format!("bad integer {s:?}: {e}")));
        out.push(Point::new(parse(x)?, parse(y)?));
    }
    Ok(out)
}

pub fn write_points(points: &[Point]) -> String {
    let mut s = String::with_capacity(points.len() * 16);
    for p in points {
        writeln!(s, "{} {}", p.x, p.y).unwrap();
    }
    s
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphVertex {
    id: usize,
    x: i64,
    y: i64,
    kind: PointClass,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<GraphVertex>,
    edges: Vec<[usize; 2]>,
}

/// Compact JSON with a trailing newline.
pub fn graph_to_json(net: &Network) -> String {
    let file = GraphFile {
        vertices: net
            .vertices()
            .iter()
            .map(|v| GraphVertex { id: v.id, x: v.point.x, y: v.point.y, kind: v.class })
            .collect(),
        edges: net.edges().iter().map(|&(a, b)| [a, b]).collect(),
    };
    let mut s = serde_json::to_string(&file).expect("graph serializes");
    s.push('\n');
    s
}

pub fn graph_from_json(text: &str) -> Result<Network, FormatError> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| FormatError::Graph(e.to_string()))?;
    for (i, v) in file.vertices.iter().enumerate() {
        if v.id != i {
            return Err(FormatError::Graph(format!("vertex at position {i} has id {}", v.id)));
        }
    }
    let vertices = file.vertices.iter().map(|v| (Point::new(v.x, v.y), v.kind)).collect();
    let edges = file.edges.iter().map(|&[a, b]| (a, b)).collect();
    Network::new(vertices, edges).map_err(|e| FormatError::Graph(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_parse() {
        let p = parse_points("# header\n1 2\n\n  -3   4  # trailing\n").unwrap();
        assert_eq!(p, vec![Point::new(1, 2), Point::new(-3, 4)]);
        assert_eq!(parse_points(&write_points(&p)).unwrap(), p);
        assert_eq!(parse_points("").unwrap(), vec![]);
    }

    #[test]
    fn points_errors_carry_line_numbers() {
        assert!(matches!(parse_points("1 2\n3\n"), Err(FormatError::Points { line: 2, .. })));
        assert!(matches!(parse_points("1 2\n\n1 x\n"), Err(FormatError::Points { line: 3, .. })));
        assert!(matches!(parse_points("1 2 3"), Err(FormatError::Points { line: 1, .. })));
        assert!(matches!(parse_points("1.5 2"), Err(FormatError::Points { line: 1, .. })));
    }

    #[test]
    fn graph_round_trip() {
        let net = Network::new(
            vec![(Point::new(0, 0), PointClass::Original), (Point::new(0, 3), PointClass::Steiner)],
            vec![(0, 1)],
        )
        .unwrap();
        let json = graph_to_json(&net);
        assert_eq!(json, "{\"vertices\":[{\"id\":0,\"x\":0,\"y\":0,\"kind\":\"original\"},{\"id\":1,\"x\":0,\"y\":3,\"kind\":\"steiner\"}],\"edges\":[[0,1]]}\n");
        assert_eq!(graph_from_json(&json).unwrap(), net);
    }

    #[test]
    fn graph_schema_is_enforced() {
        let bad = [
            r#"{"vertices":[{"id":1,"x":0,"y":0,"kind":"original"}],"edges":[]}"#,
            r#"{"vertices":[{"id":0,"x":0,"y":0,"kind":"other"}],"edges":[]}"#,
            r#"{"vertices":[{"id":0,"x":0,"y":0,"kind":"original","w":1}],"edges":[]}"#,
            r#"{"vertices":[{"id":0,"x":0,"y":0,"kind":"original"}],"edges":[[0,1]]}"#,
            r#"{"vertices":[{"id":0,"x":0,"y":0,"kind":"original"},{"id":1,"x":1,"y":1,"kind":"steiner"}],"edges":[[0,1]]}"#,
            r#"{"vertices":[]}"#,
        ];
        for text in bad {
            assert!(graph_from_json(text).is_err(), "{text}");
        }
    }
}
