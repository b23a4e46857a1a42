//! The coarse-to-fine refinement schedule: seed counts rise and iteration
//! counts fall geometrically from the coarsest level to the original graph.

use crate::error::{Error, Result};

/// Per-level seed and iteration budgets.
///
/// With `L` levels, coarsest size `n_coarse`, finest size `n_fine`, and
/// coarse-level iteration budget `k_coarse`, the factors are
///
/// ```text
/// alpha_seed = (n_fine / n_coarse)^(1 / (L - 1))
/// alpha_iter = (k_coarse / 2)^(1 / (L - 1))
/// ```
///
/// so seeds scale as `m[l] = alpha_seed * m[l - 1]` and iterations as
/// `k[l] = k[l - 1] / alpha_iter`. The endpoints then satisfy
/// `m[L-1] / n_fine = m[0] / n_coarse` (the same seed proportion at every
/// level) and `k[L-1] = 2`, up to rounding.
#[derive(Clone, Debug)]
pub struct RefineSchedule {
    alpha_seed: f64,
    alpha_iter: f64,
    seeds_real: Vec<f64>,
    iterations_real: Vec<f64>,
}

/// Build the schedule. Levels are indexed coarsest-first: level 0 is the
/// coarsest graph, level `n_levels - 1` the original.
pub fn make_schedule(
    n_fine: usize,
    n_coarse: usize,
    n_levels: usize,
    k_coarse: usize,
    m_coarse: usize,
) -> Result<RefineSchedule> {
    if m_coarse < 1 {
        return Err(Error::invalid("coarse seed count must be at least 1"));
    }
    if k_coarse < 2 {
        return Err(Error::invalid("coarse iteration count must be at least 2"));
    }
    if n_levels == 0 {
        return Err(Error::invalid("schedule needs at least one level"));
    }
    if n_levels == 1 {
        if n_fine != n_coarse {
            return Err(Error::invalid(
                "a single-level schedule requires the fine and coarse sizes to match",
            ));
        }
        return Ok(RefineSchedule {
            alpha_seed: 1.0,
            alpha_iter: 1.0,
            seeds_real: vec![m_coarse as f64],
            iterations_real: vec![k_coarse as f64],
        });
    }
    if n_fine <= n_coarse {
        return Err(Error::invalid(format!(
            "fine size {n_fine} must exceed coarse size {n_coarse}"
        )));
    }
    let exponent = 1.0 / (n_levels as f64 - 1.0);
    let alpha_seed = (n_fine as f64 / n_coarse as f64).powf(exponent);
    let alpha_iter = (k_coarse as f64 / 2.0).powf(exponent);
    let mut seeds_real = Vec::with_capacity(n_levels);
    let mut iterations_real = Vec::with_capacity(n_levels);
    let mut m = m_coarse as f64;
    let mut k = k_coarse as f64;
    for _ in 0..n_levels {
        seeds_real.push(m);
        iterations_real.push(k);
        m *= alpha_seed;
        k /= alpha_iter;
    }
    Ok(RefineSchedule {
        alpha_seed,
        alpha_iter,
        seeds_real,
        iterations_real,
    })
}

impl RefineSchedule {
    pub fn alpha_seed(&self) -> f64 {
        self.alpha_seed
    }

    pub fn alpha_iter(&self) -> f64 {
        self.alpha_iter
    }

    pub fn n_levels(&self) -> usize {
        self.seeds_real.len()
    }

    /// Seeds to plant per cluster at `level`: nearest integer, at least 1.
    pub fn seeds_at(&self, level: usize) -> usize {
        (self.seeds_real[level].round() as usize).max(1)
    }

    /// Iterations to run at `level`: nearest integer, at least 2.
    pub fn iterations_at(&self, level: usize) -> usize {
        (self.iterations_real[level].round() as usize).max(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_powers_reproduce_hand_arithmetic() {
        // 8000 -> 500 over 5 levels with 32 coarse iterations:
        // both factors are 16^(1/4) = 2.
        let s = make_schedule(8000, 500, 5, 32, 5).unwrap();
        assert!((s.alpha_seed() - 2.0).abs() < 1e-12);
        assert!((s.alpha_iter() - 2.0).abs() < 1e-12);
        let iters: Vec<usize> = (0..5).map(|l| s.iterations_at(l)).collect();
        assert_eq!(iters, vec![32, 16, 8, 4, 2]);
        let seeds: Vec<usize> = (0..5).map(|l| s.seeds_at(l)).collect();
        assert_eq!(seeds, vec![5, 10, 20, 40, 80]);
    }

    #[test]
    fn doubling_seeds_over_three_levels() {
        // alpha_seed = 2 needs n_fine / n_coarse = 4 over 3 levels.
        let s = make_schedule(2000, 500, 3, 8, 5).unwrap();
        let seeds: Vec<usize> = (0..3).map(|l| s.seeds_at(l)).collect();
        assert_eq!(seeds, vec![5, 10, 20]);
    }

    #[test]
    fn final_level_always_runs_two_iterations() {
        for (n, nsm, levels, k) in [(1000, 30, 4, 250), (777, 50, 3, 17), (9999, 2, 9, 2)] {
            let s = make_schedule(n, nsm, levels, k, 3).unwrap();
            assert_eq!(s.iterations_at(levels - 1), 2, "({n}, {nsm}, {levels}, {k})");
        }
    }

    #[test]
    fn single_level_requires_matching_sizes() {
        assert!(make_schedule(100, 100, 1, 10, 2).is_ok());
        assert!(make_schedule(100, 50, 1, 10, 2).is_err());
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(make_schedule(100, 50, 3, 1, 2).is_err());
        assert!(make_schedule(100, 50, 3, 10, 0).is_err());
        assert!(make_schedule(50, 50, 2, 10, 2).is_err());
    }
}
