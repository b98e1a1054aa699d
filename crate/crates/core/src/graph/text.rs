//! Line-oriented graph files.
//!
//! ```text
//! # dumbbell
//! edge a u u
//! edge b v v
//! edge c u v
//! ```
//!
//! `boundary <vertex-id> <doubled-weight>` lines declare univalent vertices
//! in order together with their boundary label `2·j'`.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

/// A parsed graph together with its doubled boundary labels.
#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: Graph,
    pub boundary: Vec<u32>,
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut edges = Vec::new();
    let mut boundary_ids = Vec::new();
    let mut boundary = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: n + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["edge", id, a, b] => edges.push((id.to_string(), a.to_string(), b.to_string())),
            ["boundary", v, w] => {
                let w: u32 = w
                    .parse()
                    .map_err(|_| err(format!("boundary weight `{w}` is not a non-negative integer")))?;
                boundary_ids.push(v.to_string());
                boundary.push(w);
            }
            [kw, ..] if *kw == "edge" || *kw == "boundary" => {
                return Err(err(format!("wrong number of fields for `{kw}`")))
            }
            [kw, ..] => return Err(err(format!("unknown directive `{kw}`"))),
            [] => unreachable!(),
        }
    }
    let graph = Graph::new(edges, boundary_ids)?;
    Ok(GraphFile { graph, boundary })
}

impl GraphFile {
    pub fn to_text(&self) -> String {
        let g = &self.graph;
        let mut out = String::new();
        for e in 0..g.edge_count() {
            let [a, b] = g.ends(e);
            let _ = writeln!(out, "edge {} {} {}", g.edge_id(e), g.vertex_id(a), g.vertex_id(b));
        }
        for (&v, w) in g.boundary().iter().zip(&self.boundary) {
            let _ = writeln!(out, "boundary {} {}", g.vertex_id(v), w);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_boundary() {
        let f = parse_graph("# gamma(1)\nedge f1 w1 v  # leg\nedge f2 v v\n\nboundary w1 2\n").unwrap();
        assert_eq!(f.graph.edge_count(), 2);
        assert_eq!(f.graph.edge_id(0), "f1");
        assert_eq!(f.boundary, vec![2]);
        assert_eq!(f.graph.betti(), 1);
        let again = parse_graph(&f.to_text()).unwrap();
        assert_eq!(again.graph.canonical_form(), f.graph.canonical_form());
        assert_eq!(again.boundary, f.boundary);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_graph("edge a x x\nvertex q\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                message: "unknown directive `vertex`".into()
            }
        );
        assert!(matches!(
            parse_graph("edge a x\n").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_graph("edge a w v\nedge b v v\nboundary w -1\n").unwrap_err(),
            Error::Parse { line: 3, .. }
        ));
    }
}
