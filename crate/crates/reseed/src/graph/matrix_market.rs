//! Matrix Market coordinate-format ingestion (1-based, per the standard).
//!
//! Accepts `real`, `integer`, and `pattern` fields with `general` or
//! `symmetric` symmetry. The matrix is read as a similarity matrix: diagonal
//! entries are dropped (with a count returned, since third-party similarity
//! matrices commonly carry them), pattern entries get weight 1.0, and the
//! result is symmetrized under the same rules as edge lists.

use std::path::Path;

use super::SparseGraph;
use crate::error::{Error, Result};

/// Load a Matrix Market file. Returns the graph and the number of diagonal
/// entries that were silently dropped.
pub fn load_matrix_market(path: impl AsRef<Path>) -> Result<(SparseGraph, usize)> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let parse_err = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };

    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || !fields[0].eq_ignore_ascii_case("%%MatrixMarket") {
        return Err(parse_err(1, format!("not a MatrixMarket header: {header:?}")));
    }
    let object = fields[1].to_ascii_lowercase();
    let format = fields[2].to_ascii_lowercase();
    let field = fields[3].to_ascii_lowercase();
    let symmetry = fields[4].to_ascii_lowercase();
    if object != "matrix" || format != "coordinate" {
        return Err(parse_err(1, "only `matrix coordinate` files are supported".into()));
    }
    let pattern = match field.as_str() {
        "pattern" => true,
        "real" | "integer" => false,
        other => return Err(parse_err(1, format!("unsupported field type {other:?}"))),
    };
    let symmetric = match symmetry.as_str() {
        "symmetric" => true,
        "general" => false,
        other => return Err(parse_err(1, format!("unsupported symmetry {other:?}"))),
    };

    // Size line: first non-comment line after the header.
    let (size_idx, size_line) = lines
        .by_ref()
        .find(|(_, l)| !l.trim_start().starts_with('%') && !l.trim().is_empty())
        .ok_or_else(|| parse_err(1, "missing size line".into()))?;
    let dims: Vec<&str> = size_line.split_whitespace().collect();
    if dims.len() != 3 {
        return Err(parse_err(size_idx + 1, format!("expected `M N L`, got {size_line:?}")));
    }
    let n_rows: usize = dims[0]
        .parse()
        .map_err(|_| parse_err(size_idx + 1, "bad row count".into()))?;
    let n_cols: usize = dims[1]
        .parse()
        .map_err(|_| parse_err(size_idx + 1, "bad column count".into()))?;
    let n_entries: usize = dims[2]
        .parse()
        .map_err(|_| parse_err(size_idx + 1, "bad entry count".into()))?;
    if n_rows != n_cols {
        return Err(parse_err(
            size_idx + 1,
            format!("matrix must be square, got {n_rows}x{n_cols}"),
        ));
    }

    let mut edges: Vec<(usize, usize, f64)> = Vec::with_capacity(n_entries);
    let mut dropped_diagonal = 0usize;
    let mut seen = 0usize;
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        seen += 1;
        let mut f = line.split_whitespace();
        let i: usize = f
            .next()
            .unwrap()
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad row index in {line:?}")))?;
        let j: usize = f
            .next()
            .ok_or_else(|| parse_err(line_no, format!("missing column index in {line:?}")))?
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad column index in {line:?}")))?;
        let value: f64 = if pattern {
            1.0
        } else {
            f.next()
                .ok_or_else(|| parse_err(line_no, format!("missing value in {line:?}")))?
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad value in {line:?}")))?
        };
        if i < 1 || j < 1 || i > n_rows || j > n_cols {
            return Err(parse_err(line_no, format!("entry ({i}, {j}) out of range")));
        }
        if value < 0.0 || !value.is_finite() {
            return Err(parse_err(line_no, format!("negative entry {value} at ({i}, {j})")));
        }
        if i == j {
            dropped_diagonal += 1;
            continue;
        }
        if value == 0.0 {
            // explicit zero: a stored non-entry
            continue;
        }
        edges.push((i - 1, j - 1, value));
        let _ = symmetric; // symmetric files list each entry once; general
                           // files may list both orientations. Either way the
                           // symmetrizing constructor below applies.
    }
    if seen != n_entries {
        return Err(parse_err(
            size_idx + 1,
            format!("size line promises {n_entries} entries, found {seen}"),
        ));
    }
    let g = SparseGraph::from_undirected_edges(n_rows, edges)?;
    Ok((g, dropped_diagonal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn load_str(contents: &str) -> Result<(SparseGraph, usize)> {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        load_matrix_market(f.path())
    }

    #[test]
    fn pattern_entries_get_unit_weight() {
        let (g, warn) = load_str(
            "%%MatrixMarket matrix coordinate pattern general\n2 2 2\n1 2\n2 1\n",
        )
        .unwrap();
        assert_eq!(warn, 0);
        assert_eq!(g.n_edges(), 1);
        assert_eq!(g.edge_weight(0, 1), Some(1.0));
    }

    #[test]
    fn diagonal_entries_dropped_with_count() {
        let (g, warn) = load_str(
            "%%MatrixMarket matrix coordinate real symmetric\n3 3 3\n1 1 5.0\n2 1 1.0\n3 2 2.0\n",
        )
        .unwrap();
        assert_eq!(warn, 1);
        assert_eq!(g.n_edges(), 2);
        assert_eq!(g.edge_weight(0, 1), Some(1.0));
        assert_eq!(g.edge_weight(1, 2), Some(2.0));
    }

    #[test]
    fn non_square_is_rejected() {
        let err = load_str("%%MatrixMarket matrix coordinate real general\n2 3 1\n1 2 1.0\n")
            .unwrap_err();
        assert!(err.to_string().contains("square"));
    }

    #[test]
    fn negative_entries_are_rejected() {
        let err = load_str("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 -1.0\n")
            .unwrap_err();
        assert!(err.to_string().contains("negative"));
    }

    #[test]
    fn general_orientations_must_agree() {
        let ok = load_str(
            "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 1.5\n2 1 1.5\n",
        )
        .unwrap();
        assert_eq!(ok.0.n_edges(), 1);
        let err = load_str(
            "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 1.5\n2 1 2.5\n",
        )
        .unwrap_err();
        assert!(err.to_string().contains("conflicting"));
    }

    #[test]
    fn entry_count_mismatch_is_rejected() {
        let err = load_str("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 1.0\n")
            .unwrap_err();
        assert!(err.to_string().contains("promises"));
    }
}
