//! Score propagation: repeatedly apply a random-walk style operator to the
//! planted indicator columns until the scores cover the graph.
//!
//! The plain walk applies the column-stochastic operator `W D^-1`, which
//! preserves each column's total mass but oscillates forever on bipartite
//! graphs. The lazy walk `(I + W D^-1) / 2` is the default: same stationary
//! behavior, and coverage grows monotonically on any connected graph. A
//! diffusion variant applies the row-stochastic `D^-1 W`, and a damped
//! variant keeps re-injecting the seeds:
//! `F <- alpha W D^-1 F + (1 - alpha) F0`.

use rayon::prelude::*;

use super::indicator::{IndicatorMatrix, SparseColumn};
use crate::error::{Error, Result};
use crate::graph::SparseGraph;

/// Propagation operator applied at each step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GrowVariant {
    /// `F <- (W D^-1) F`; mass-preserving, oscillates on bipartite graphs.
    Walk,
    /// `F <- (F + W D^-1 F) / 2`; mass-preserving, always settles.
    LazyWalk,
    /// `F <- (D^-1 W) F`.
    Diffusion,
    /// `F <- alpha W D^-1 F + (1 - alpha) F0` with `alpha` in [0, 1);
    /// conventionally 0.85.
    Ppr { alpha: f64 },
}

/// When propagation may stop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// Every (vertex, cluster) score is nonzero.
    FullCoverage,
    /// Every vertex has a nonzero score in at least one cluster. Cheaper,
    /// and exactly the precondition the harvest step needs.
    RowCoverage,
}

#[derive(Clone, Copy, Debug)]
pub struct GrowConfig {
    pub variant: GrowVariant,
    pub termination: Termination,
    /// Step cap; defaults to `4 * n_vertices`, a generous multiple of any
    /// connected graph's diameter.
    pub max_steps: Option<usize>,
}

impl Default for GrowConfig {
    fn default() -> Self {
        Self {
            variant: GrowVariant::LazyWalk,
            termination: Termination::RowCoverage,
            max_steps: None,
        }
    }
}

impl GrowConfig {
    pub fn validate(&self) -> Result<()> {
        if let GrowVariant::Ppr { alpha } = self.variant {
            if !(0.0..1.0).contains(&alpha) {
                return Err(Error::invalid(format!(
                    "damping factor must lie in [0, 1), got {alpha}"
                )));
            }
        }
        if self.max_steps == Some(0) {
            return Err(Error::invalid("max_steps must be at least 1"));
        }
        Ok(())
    }

    fn step_cap(&self, n_vertices: usize) -> usize {
        self.max_steps.unwrap_or(4 * n_vertices.max(1))
    }
}

/// Propagated scores plus the number of operator applications it took.
#[derive(Clone, Debug)]
pub struct GrowOutcome {
    pub indicator: IndicatorMatrix,
    pub steps: usize,
}

/// Per-column dense scratch. The dense buffers make each step a plain
/// scatter over the support's out-edges; the support lists keep early steps
/// (tiny supports) cheap, and once a support is large the step switches to
/// untracked scatter plus a linear rescan.
struct ColumnState {
    dense: Vec<f64>,
    support: Vec<usize>,
    next: Vec<f64>,
    in_next: Vec<bool>,
    touched: Vec<usize>,
}

impl ColumnState {
    fn with_capacity(n: usize) -> Self {
        Self {
            dense: vec![0.0; n],
            support: Vec::with_capacity(n),
            next: vec![0.0; n],
            in_next: vec![false; n],
            touched: Vec::with_capacity(n),
        }
    }

    /// Load seed values, clearing whatever the previous run left behind.
    fn reset(&mut self, col: &SparseColumn) {
        for k in 0..self.support.len() {
            let v = self.support[k];
            self.dense[v] = 0.0;
        }
        self.support.clear();
        self.support.extend_from_slice(&col.indices);
        for (&v, &x) in col.indices.iter().zip(&col.values) {
            self.dense[v] = x;
        }
    }

    fn to_column(&self) -> SparseColumn {
        let mut indices = self.support.clone();
        if !indices.is_sorted() {
            indices.sort_unstable();
        }
        let values = indices.iter().map(|&v| self.dense[v]).collect();
        SparseColumn::from_sorted(indices, values)
    }

    fn advance(&mut self, g: &SparseGraph, inv_deg: &[f64], variant: GrowVariant, f0: &SparseColumn) {
        // Tracking touched entries pays off while the support is small;
        // past that, a plain scatter plus one linear rescan is cheaper.
        let n = self.dense.len();
        let track = self.support.len() < n / 8;
        match variant {
            GrowVariant::Walk => {
                for k in 0..self.support.len() {
                    let j = self.support[k];
                    let x = self.dense[j] * inv_deg[j];
                    self.scatter_from(g, j, x, track);
                }
            }
            GrowVariant::LazyWalk => {
                for k in 0..self.support.len() {
                    let j = self.support[k];
                    let x = 0.5 * self.dense[j] * inv_deg[j];
                    self.scatter_from(g, j, x, track);
                }
                for k in 0..self.support.len() {
                    let j = self.support[k];
                    let half = 0.5 * self.dense[j];
                    self.deposit(j, half, track);
                }
            }
            GrowVariant::Diffusion => {
                for k in 0..self.support.len() {
                    let j = self.support[k];
                    let x = self.dense[j];
                    let (targets, weights) = g.row(j);
                    if track {
                        for (&i, &w) in targets.iter().zip(weights) {
                            self.deposit(i, w * x * inv_deg[i], true);
                        }
                    } else {
                        for (&i, &w) in targets.iter().zip(weights) {
                            self.next[i] += w * x * inv_deg[i];
                        }
                    }
                }
            }
            GrowVariant::Ppr { alpha } => {
                for k in 0..self.support.len() {
                    let j = self.support[k];
                    let x = alpha * self.dense[j] * inv_deg[j];
                    self.scatter_from(g, j, x, track);
                }
                for (&v, &x) in f0.indices.iter().zip(&f0.values) {
                    self.deposit(v, (1.0 - alpha) * x, track);
                }
            }
        }
        // swap in the new values, pruning entries that underflowed to zero
        for k in 0..self.support.len() {
            let j = self.support[k];
            self.dense[j] = 0.0;
        }
        std::mem::swap(&mut self.dense, &mut self.next);
        self.support.clear();
        if track {
            for k in 0..self.touched.len() {
                let v = self.touched[k];
                self.in_next[v] = false;
                if self.dense[v] > 0.0 {
                    self.support.push(v);
                } else {
                    self.dense[v] = 0.0;
                }
            }
            self.touched.clear();
        } else {
            for v in 0..n {
                if self.dense[v] > 0.0 {
                    self.support.push(v);
                }
            }
        }
    }

    #[inline]
    fn scatter_from(&mut self, g: &SparseGraph, j: usize, x: f64, track: bool) {
        let (targets, weights) = g.row(j);
        if track {
            for (&i, &w) in targets.iter().zip(weights) {
                self.deposit(i, w * x, true);
            }
        } else {
            for (&i, &w) in targets.iter().zip(weights) {
                self.next[i] += w * x;
            }
        }
    }

    #[inline]
    fn deposit(&mut self, i: usize, value: f64, track: bool) {
        if track && !self.in_next[i] {
            self.in_next[i] = true;
            self.touched.push(i);
        }
        self.next[i] += value;
    }

    fn sum(&self) -> f64 {
        self.support.iter().map(|&v| self.dense[v]).sum()
    }
}

/// Reusable buffers for repeated [`grow`] calls on the same graph.
pub(crate) struct GrowWorkspace {
    columns: Vec<ColumnState>,
    cover: Vec<bool>,
    inv_deg: Vec<f64>,
    best: Vec<f64>,
    assign: Vec<usize>,
}

impl GrowWorkspace {
    pub(crate) fn new(g: &SparseGraph) -> Self {
        Self {
            columns: Vec::new(),
            cover: vec![false; g.n_vertices()],
            inv_deg: inverse_degrees(g),
            best: Vec::new(),
            assign: Vec::new(),
        }
    }
}

fn terminated(states: &[ColumnState], termination: Termination, n: usize, cover: &mut [bool]) -> bool {
    match termination {
        Termination::FullCoverage => states.iter().all(|s| s.support.len() == n),
        Termination::RowCoverage => {
            cover.fill(false);
            let mut remaining = n;
            for s in states {
                for &v in &s.support {
                    if !cover[v] {
                        cover[v] = true;
                        remaining -= 1;
                    }
                }
            }
            remaining == 0
        }
    }
}

/// Apply one propagation step to `current`. Exposed so the per-step
/// numerical contracts (mass conservation, damped fixed points) can be
/// checked directly.
pub fn step(
    g: &SparseGraph,
    current: &IndicatorMatrix,
    f0: &IndicatorMatrix,
    variant: GrowVariant,
) -> Result<IndicatorMatrix> {
    let cfg = GrowConfig {
        variant,
        termination: Termination::RowCoverage,
        max_steps: None,
    };
    cfg.validate()?;
    check_shapes(g, current)?;
    let inv_deg = inverse_degrees(g);
    let n = g.n_vertices();
    let columns = current
        .columns()
        .iter()
        .zip(f0.columns())
        .map(|(col, f0_col)| {
            let mut state = ColumnState::with_capacity(n);
            state.reset(col);
            state.advance(g, &inv_deg, variant, f0_col);
            state.to_column()
        })
        .collect();
    Ok(IndicatorMatrix::from_columns(n, columns))
}

/// Propagate until the termination condition holds, or fail after the step
/// cap. Columns propagate independently (and in parallel); the result does
/// not depend on the parallel schedule.
pub fn grow(f0: &IndicatorMatrix, g: &SparseGraph, cfg: &GrowConfig) -> Result<GrowOutcome> {
    let mut ws = GrowWorkspace::new(g);
    grow_with(f0, g, cfg, &mut ws)
}

/// [`grow`] with caller-owned scratch buffers, for tight loops.
pub(crate) fn grow_with(
    f0: &IndicatorMatrix,
    g: &SparseGraph,
    cfg: &GrowConfig,
    ws: &mut GrowWorkspace,
) -> Result<GrowOutcome> {
    let steps = propagate(f0, g, cfg, ws)?;
    if steps == 0 {
        return Ok(GrowOutcome {
            indicator: f0.clone(),
            steps: 0,
        });
    }
    let columns = ws.columns[..f0.n_columns()]
        .iter()
        .map(ColumnState::to_column)
        .collect();
    Ok(GrowOutcome {
        indicator: IndicatorMatrix::from_columns(g.n_vertices(), columns),
        steps,
    })
}

/// Grow and threshold in one pass, skipping the sparse-matrix assembly.
/// Must agree exactly with `harvest(grow(..).indicator)`.
pub(crate) fn grow_harvest_with(
    f0: &IndicatorMatrix,
    g: &SparseGraph,
    cfg: &GrowConfig,
    ws: &mut GrowWorkspace,
) -> Result<(super::Partition, usize)> {
    let steps = propagate(f0, g, cfg, ws)?;
    let n = g.n_vertices();
    let r = f0.n_columns();
    ws.best.clear();
    ws.best.resize(n, 0.0);
    ws.assign.clear();
    ws.assign.resize(n, usize::MAX);
    for (c, state) in ws.columns[..r].iter().enumerate() {
        for &v in &state.support {
            let x = state.dense[v];
            // strict > keeps the lowest column index on ties
            if x > ws.best[v] || ws.assign[v] == usize::MAX {
                ws.best[v] = x;
                ws.assign[v] = c;
            }
        }
    }
    if let Some(uncovered) = ws.assign.iter().position(|&c| c == usize::MAX) {
        return Err(Error::UncoveredVertex(uncovered));
    }
    let partition = super::Partition::new(std::mem::take(&mut ws.assign), r)?;
    Ok((partition, steps))
}

fn propagate(
    f0: &IndicatorMatrix,
    g: &SparseGraph,
    cfg: &GrowConfig,
    ws: &mut GrowWorkspace,
) -> Result<usize> {
    cfg.validate()?;
    check_shapes(g, f0)?;
    for (r, col) in f0.columns().iter().enumerate() {
        if col.nnz() == 0 {
            return Err(Error::invalid(format!("seed column {r} is empty")));
        }
    }
    let n = g.n_vertices();
    debug_assert_eq!(ws.cover.len(), n, "workspace built for a different graph");
    ws.columns
        .resize_with(f0.n_columns().max(ws.columns.len()), || {
            ColumnState::with_capacity(n)
        });
    let states = &mut ws.columns[..f0.n_columns()];
    for (state, col) in states.iter_mut().zip(f0.columns()) {
        state.reset(col);
    }
    if terminated(states, cfg.termination, n, &mut ws.cover) {
        return Ok(0);
    }

    let inv_deg = &ws.inv_deg;
    let max_steps = cfg.step_cap(n);
    let mass_preserving = matches!(cfg.variant, GrowVariant::Walk | GrowVariant::LazyWalk);

    for steps in 1..=max_steps {
        states
            .par_iter_mut()
            .zip(f0.columns().par_iter())
            .for_each(|(state, f0_col)| {
                let before = if cfg!(debug_assertions) && mass_preserving {
                    state.sum()
                } else {
                    0.0
                };
                state.advance(g, inv_deg, cfg.variant, f0_col);
                if cfg!(debug_assertions) && mass_preserving {
                    let after = state.sum();
                    debug_assert!(
                        (after - before).abs() <= 1e-9 * before.abs().max(1e-300),
                        "column mass drifted: {before} -> {after}"
                    );
                }
            });
        if let Some(r) = states.iter().position(|s| s.support.is_empty()) {
            return Err(Error::Underflow { column: r });
        }
        if terminated(states, cfg.termination, n, &mut ws.cover) {
            return Ok(steps);
        }
    }
    Err(Error::CoverageStalled { steps: max_steps })
}

fn check_shapes(g: &SparseGraph, f: &IndicatorMatrix) -> Result<()> {
    if f.n_vertices() != g.n_vertices() {
        return Err(Error::invalid(format!(
            "score matrix has {} rows but the graph has {} vertices",
            f.n_vertices(),
            g.n_vertices()
        )));
    }
    if f.n_columns() == 0 {
        return Err(Error::invalid("score matrix has no columns"));
    }
    Ok(())
}

fn inverse_degrees(g: &SparseGraph) -> Vec<f64> {
    g.degrees()
        .iter()
        .map(|&d| if d > 0.0 { 1.0 / d } else { 0.0 })
        .collect()
}
