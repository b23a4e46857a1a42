//! Plain-text edge lists: `i j [w]` per line, 0-based indices, weight
//! defaulting to 1.0, `#` comments ignored.

use std::io::Write;
use std::path::Path;

use super::SparseGraph;
use crate::error::{Error, Result};

/// Load an edge list. The file lists each undirected edge in either
/// orientation; if both orientations appear their weights must agree.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<SparseGraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let parse_err = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };

    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut max_vertex = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let u: usize = fields
            .next()
            .unwrap()
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad vertex index in {line:?}")))?;
        let v: usize = fields
            .next()
            .ok_or_else(|| parse_err(line_no, format!("expected `i j [w]`, got {line:?}")))?
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad vertex index in {line:?}")))?;
        let w: f64 = match fields.next() {
            Some(s) => s
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad weight in {line:?}")))?,
            None => 1.0,
        };
        if fields.next().is_some() {
            return Err(parse_err(line_no, format!("trailing fields in {line:?}")));
        }
        if u == v {
            return Err(parse_err(line_no, format!("self-loop at vertex {u}")));
        }
        if !w.is_finite() || w <= 0.0 {
            return Err(parse_err(line_no, format!("weight must be positive, got {w}")));
        }
        max_vertex = max_vertex.max(u).max(v);
        edges.push((u, v, w));
    }
    if edges.is_empty() {
        return Err(parse_err(1, "file contains no edges".into()));
    }
    SparseGraph::from_undirected_edges(max_vertex + 1, edges)
}

/// Write an edge list in canonical order: one `i j w` line per undirected
/// edge with `i < j`, sorted by `(i, j)`. Output is byte-stable for a given
/// graph, so identical graphs serialize identically.
pub fn write_edge_list(g: &SparseGraph, mut out: impl Write) -> std::io::Result<()> {
    for (u, v, w) in g.edges() {
        writeln!(out, "{u} {v} {w}")?;
    }
    Ok(())
}
