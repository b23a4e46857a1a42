//! Per-iteration run traces, multi-run aggregation, and their CSV forms.

use std::io::Write;

use crate::error::{Error, Result};

/// One iteration of a clustering run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceRecord {
    pub iteration: usize,
    /// Seconds since the run started; non-decreasing across records.
    pub elapsed_s: f64,
    /// Seeds planted per cluster this iteration.
    pub seeds: usize,
    /// Fraction of vertices whose assignment changed this iteration.
    pub changed_fraction: f64,
    /// Purity against ground truth, when one was supplied.
    pub purity: Option<f64>,
}

/// Iteration-by-iteration record of one run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunTrace {
    records: Vec<TraceRecord>,
}

impl RunTrace {
    /// Validates that iterations are contiguous and elapsed times
    /// non-decreasing.
    pub fn from_records(records: Vec<TraceRecord>) -> Result<Self> {
        for pair in records.windows(2) {
            if pair[1].iteration != pair[0].iteration + 1 {
                return Err(Error::invalid(format!(
                    "trace iterations must be contiguous, got {} then {}",
                    pair[0].iteration, pair[1].iteration
                )));
            }
            if pair[1].elapsed_s < pair[0].elapsed_s {
                return Err(Error::invalid("trace elapsed times must be non-decreasing"));
            }
        }
        Ok(Self { records })
    }

    pub fn records(&self) -> &[TraceRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn final_purity(&self) -> Option<f64> {
        self.records.last().and_then(|r| r.purity)
    }

    fn purity_points(&self) -> Vec<(f64, f64)> {
        self.records
            .iter()
            .filter_map(|r| r.purity.map(|p| (r.elapsed_s, p)))
            .collect()
    }
}

/// First elapsed time at which purity reaches `target`, or `None` if the
/// run never gets there. Errors when the trace carries no purity at all.
pub fn time_to_purity(trace: &RunTrace, target: f64) -> Result<Option<f64>> {
    let points = trace.purity_points();
    if points.is_empty() {
        return Err(Error::invalid("trace has no purity records"));
    }
    Ok(points.iter().find(|&&(_, p)| p >= target).map(|&(t, _)| t))
}

/// Mean and population standard deviation of purity at one grid time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AggregatePoint {
    pub elapsed_s: f64,
    pub purity_mean: f64,
    pub purity_std: f64,
}

/// Purity statistics over repeated runs on a common time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct AggregateTrace {
    pub points: Vec<AggregatePoint>,
    pub n_runs: usize,
}

/// Resample every trace onto the union of their event times by carrying the
/// last observed purity forward (and the first observation backward, for
/// grid points before a trace begins), then average per grid point. The
/// grid extends to the longest trace; shorter traces keep reporting their
/// final value.
pub fn aggregate_runs(traces: &[RunTrace]) -> Result<AggregateTrace> {
    if traces.is_empty() {
        return Err(Error::invalid("cannot aggregate zero traces"));
    }
    let per_trace: Vec<Vec<(f64, f64)>> = traces.iter().map(|t| t.purity_points()).collect();
    if let Some(i) = per_trace.iter().position(|p| p.is_empty()) {
        return Err(Error::invalid(format!("trace {i} has no purity records")));
    }
    let mut grid: Vec<f64> = per_trace.iter().flatten().map(|&(t, _)| t).collect();
    grid.sort_unstable_by(|a, b| a.total_cmp(b));
    grid.dedup();

    let mut points = Vec::with_capacity(grid.len());
    let mut cursors = vec![0usize; per_trace.len()];
    for &t in &grid {
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for (trace, cursor) in per_trace.iter().zip(cursors.iter_mut()) {
            while *cursor + 1 < trace.len() && trace[*cursor + 1].0 <= t {
                *cursor += 1;
            }
            // last observation at or before t; grid points before the first
            // observation take the first value
            let value = trace[*cursor].1;
            sum += value;
            sum_sq += value * value;
        }
        let n = per_trace.len() as f64;
        let mean = sum / n;
        let variance = (sum_sq / n - mean * mean).max(0.0);
        points.push(AggregatePoint {
            elapsed_s: t,
            purity_mean: mean,
            purity_std: variance.sqrt(),
        });
    }
    Ok(AggregateTrace {
        points,
        n_runs: traces.len(),
    })
}

/// Write traces as CSV: `run,iteration,elapsed_s,m_eff,changed_frac,purity`,
/// with the purity field left empty when absent.
pub fn write_trace_csv(mut out: impl Write, traces: &[RunTrace]) -> std::io::Result<()> {
    writeln!(out, "run,iteration,elapsed_s,m_eff,changed_frac,purity")?;
    for (run, trace) in traces.iter().enumerate() {
        for r in trace.records() {
            let purity = r.purity.map(|p| p.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{run},{},{},{},{},{purity}",
                r.iteration, r.elapsed_s, r.seeds, r.changed_fraction
            )?;
        }
    }
    Ok(())
}

/// Write an aggregate as CSV: `elapsed_s,purity_mean,purity_std,n_runs`.
pub fn write_aggregate_csv(mut out: impl Write, agg: &AggregateTrace) -> std::io::Result<()> {
    writeln!(out, "elapsed_s,purity_mean,purity_std,n_runs")?;
    for p in &agg.points {
        writeln!(
            out,
            "{},{},{},{}",
            p.elapsed_s, p.purity_mean, p.purity_std, agg.n_runs
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(iteration: usize, elapsed_s: f64, purity: Option<f64>) -> TraceRecord {
        TraceRecord {
            iteration,
            elapsed_s,
            seeds: 1,
            changed_fraction: 0.0,
            purity,
        }
    }

    fn trace(points: &[(f64, f64)]) -> RunTrace {
        RunTrace::from_records(
            points
                .iter()
                .enumerate()
                .map(|(i, &(t, p))| record(i, t, Some(p)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn validation_catches_gaps_and_time_regressions() {
        assert!(RunTrace::from_records(vec![record(0, 0.0, None), record(2, 1.0, None)]).is_err());
        assert!(RunTrace::from_records(vec![record(0, 1.0, None), record(1, 0.5, None)]).is_err());
    }

    #[test]
    fn time_to_purity_finds_the_first_crossing() {
        let t = trace(&[(1.0, 0.2), (5.5, 0.5), (16.7, 0.6), (20.0, 0.7)]);
        assert_eq!(time_to_purity(&t, 0.6).unwrap(), Some(16.7));
        assert_eq!(time_to_purity(&t, 0.0).unwrap(), Some(1.0));
        let low = trace(&[(1.0, 0.2), (2.0, 0.5)]);
        assert_eq!(time_to_purity(&low, 0.6).unwrap(), None);
        let no_purity = RunTrace::from_records(vec![record(0, 0.0, None)]).unwrap();
        assert!(time_to_purity(&no_purity, 0.5).is_err());
    }

    #[test]
    fn single_trace_aggregates_to_itself_with_zero_std() {
        let t = trace(&[(0.5, 0.3), (1.0, 0.9)]);
        let agg = aggregate_runs(std::slice::from_ref(&t)).unwrap();
        assert_eq!(agg.n_runs, 1);
        assert_eq!(
            agg.points,
            vec![
                AggregatePoint { elapsed_s: 0.5, purity_mean: 0.3, purity_std: 0.0 },
                AggregatePoint { elapsed_s: 1.0, purity_mean: 0.9, purity_std: 0.0 },
            ]
        );
    }

    #[test]
    fn constant_traces_average_with_population_std() {
        let a = trace(&[(1.0, 0.6), (2.0, 0.6)]);
        let b = trace(&[(1.5, 0.8), (2.5, 0.8)]);
        let agg = aggregate_runs(&[a, b]).unwrap();
        for p in &agg.points {
            assert!((p.purity_mean - 0.7).abs() < 1e-12);
            assert!((p.purity_std - 0.1).abs() < 1e-12);
        }
        assert_eq!(agg.points.len(), 4);
    }

    #[test]
    fn shorter_traces_carry_their_final_value_forward() {
        let short = trace(&[(1.0, 0.4)]);
        let long = trace(&[(1.0, 0.2), (10.0, 1.0)]);
        let agg = aggregate_runs(&[short, long]).unwrap();
        let last = agg.points.last().unwrap();
        assert_eq!(last.elapsed_s, 10.0);
        assert!((last.purity_mean - 0.7).abs() < 1e-12);
    }

    #[test]
    fn csv_formats_match_the_contract() {
        let t = RunTrace::from_records(vec![
            record(0, 0.25, Some(0.5)),
            record(1, 0.5, None),
        ])
        .unwrap();
        let mut buf = Vec::new();
        write_trace_csv(&mut buf, &[t]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "run,iteration,elapsed_s,m_eff,changed_frac,purity\n0,0,0.25,1,0,0.5\n0,1,0.5,1,0,\n"
        );

        let agg = AggregateTrace {
            points: vec![AggregatePoint { elapsed_s: 1.0, purity_mean: 0.75, purity_std: 0.25 }],
            n_runs: 2,
        };
        let mut buf = Vec::new();
        write_aggregate_csv(&mut buf, &agg).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "elapsed_s,purity_mean,purity_std,n_runs\n1,0.75,0.25,2\n"
        );
    }
}
