use crate::error::{Error, Result};

/// N-by-R nonnegative score matrix, one sparse column per cluster.
///
/// Stored values are finite and strictly positive; an absent entry is zero.
/// This is what makes large cluster counts affordable: a column only pays
/// for the vertices its scores have reached.
#[derive(Clone, Debug, PartialEq)]
pub struct IndicatorMatrix {
    n_vertices: usize,
    columns: Vec<SparseColumn>,
}

/// One column: parallel index/value arrays, indices sorted ascending.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseColumn {
    pub(crate) indices: Vec<usize>,
    pub(crate) values: Vec<f64>,
}

impl SparseColumn {
    pub(crate) fn from_sorted(indices: Vec<usize>, values: Vec<f64>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(indices.len(), values.len());
        debug_assert!(values.iter().all(|&v| v > 0.0 && v.is_finite()));
        Self { indices, values }
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

impl IndicatorMatrix {
    pub(crate) fn from_columns(n_vertices: usize, columns: Vec<SparseColumn>) -> Self {
        Self {
            n_vertices,
            columns,
        }
    }

    /// Build from `(vertex, cluster, value)` triples; values must be finite
    /// and positive, with at most one entry per (vertex, cluster).
    pub fn from_triples(
        n_vertices: usize,
        n_columns: usize,
        triples: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n_columns];
        for (v, c, x) in triples {
            if v >= n_vertices || c >= n_columns {
                return Err(Error::invalid(format!(
                    "entry ({v}, {c}) out of range for {n_vertices}x{n_columns} scores"
                )));
            }
            if !x.is_finite() || x < 0.0 {
                return Err(Error::invalid(format!("score must be finite and >= 0, got {x}")));
            }
            if x > 0.0 {
                cols[c].push((v, x));
            }
        }
        let mut columns = Vec::with_capacity(n_columns);
        for (c, mut col) in cols.into_iter().enumerate() {
            col.sort_unstable_by_key(|&(v, _)| v);
            if col.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::invalid(format!("duplicate entry in column {c}")));
            }
            let (indices, values) = col.into_iter().unzip();
            columns.push(SparseColumn::from_sorted(indices, values));
        }
        Ok(Self {
            n_vertices,
            columns,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, r: usize) -> (&[usize], &[f64]) {
        let c = &self.columns[r];
        (&c.indices, &c.values)
    }

    pub(crate) fn columns(&self) -> &[SparseColumn] {
        &self.columns
    }

    pub fn get(&self, v: usize, r: usize) -> f64 {
        let c = &self.columns[r];
        match c.indices.binary_search(&v) {
            Ok(k) => c.values[k],
            Err(_) => 0.0,
        }
    }

    pub fn column_sum(&self, r: usize) -> f64 {
        self.columns[r].sum()
    }

    /// True when every (vertex, column) entry is nonzero.
    pub fn fully_dense(&self) -> bool {
        self.columns.iter().all(|c| c.nnz() == self.n_vertices)
    }

    /// Number of vertices with at least one nonzero score.
    pub fn covered_rows(&self) -> usize {
        let mut covered = vec![false; self.n_vertices];
        for c in &self.columns {
            for &v in &c.indices {
                covered[v] = true;
            }
        }
        covered.iter().filter(|&&b| b).count()
    }

    /// Scale every stored value by `factor > 0`.
    pub fn scale(&self, factor: f64) -> IndicatorMatrix {
        assert!(factor > 0.0 && factor.is_finite());
        let columns = self
            .columns
            .iter()
            .map(|c| SparseColumn {
                indices: c.indices.clone(),
                values: c.values.iter().map(|&v| v * factor).collect(),
            })
            .collect();
        IndicatorMatrix {
            n_vertices: self.n_vertices,
            columns,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples_round_trip() {
        let f = IndicatorMatrix::from_triples(3, 2, [(0, 0, 1.0), (2, 1, 0.5), (1, 1, 2.0)])
            .unwrap();
        assert_eq!(f.get(0, 0), 1.0);
        assert_eq!(f.get(1, 1), 2.0);
        assert_eq!(f.get(2, 1), 0.5);
        assert_eq!(f.get(2, 0), 0.0);
        assert_eq!(f.column(1).0, &[1, 2]);
        assert_eq!(f.covered_rows(), 3);
        assert!(!f.fully_dense());
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(IndicatorMatrix::from_triples(2, 2, [(0, 0, -1.0)]).is_err());
        assert!(IndicatorMatrix::from_triples(2, 2, [(0, 0, f64::INFINITY)]).is_err());
        assert!(IndicatorMatrix::from_triples(2, 2, [(2, 0, 1.0)]).is_err());
        assert!(IndicatorMatrix::from_triples(2, 2, [(0, 0, 1.0), (0, 0, 2.0)]).is_err());
    }

    #[test]
    fn explicit_zeros_are_dropped() {
        let f = IndicatorMatrix::from_triples(2, 1, [(0, 0, 0.0), (1, 0, 1.0)]).unwrap();
        assert_eq!(f.column(0).0, &[1]);
    }
}
