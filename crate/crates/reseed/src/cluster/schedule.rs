use crate::error::{Error, Result};

/// Seed budget for the planting step: a real-valued accumulator `m` and a
/// per-round increment `delta_m`.
///
/// `m` is tracked as a real and floored at use because the standard
/// increment `speed * 1e-4 * N / R` is fractional at typical settings;
/// integer tracking would stall the schedule entirely.
#[derive(Clone, Copy, Debug)]
pub struct SeedSchedule {
    m: f64,
    delta_m: f64,
}

impl SeedSchedule {
    /// Start at one seed per cluster with an explicit increment.
    pub fn from_delta(delta_m: f64) -> Result<Self> {
        if !delta_m.is_finite() || delta_m < 0.0 {
            return Err(Error::invalid(format!(
                "seed increment must be nonnegative, got {delta_m}"
            )));
        }
        Ok(Self { m: 1.0, delta_m })
    }

    /// Standard increment `speed * 1e-4 * N / R`, with `speed` trading
    /// quality for convergence speed (useful range roughly 1 to 10).
    pub fn from_speed(speed: f64, n_vertices: usize, n_clusters: usize) -> Result<Self> {
        if !speed.is_finite() || speed <= 0.0 {
            return Err(Error::invalid(format!("speed must be positive, got {speed}")));
        }
        if n_clusters == 0 {
            return Err(Error::invalid("cluster count must be positive"));
        }
        Self::from_delta(speed * 1e-4 * (n_vertices as f64 / n_clusters as f64))
    }

    /// Integer seed count to use now: `max(1, floor(m))`.
    pub fn effective(&self) -> usize {
        (self.m.floor() as usize).max(1)
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn delta_m(&self) -> f64 {
        self.delta_m
    }

    /// Advance the accumulator by one round.
    pub fn advance(&mut self) {
        self.m += self.delta_m;
    }

    /// Reset the accumulator after planting clipped the seed count to the
    /// smallest cluster.
    pub fn reset_to(&mut self, seeds: usize) {
        self.m = seeds as f64;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn speed_formula_matches_hand_arithmetic() {
        // 20_000 vertices in 20 clusters at speed 5: 5e-4 * 1000 = 0.5.
        let s = SeedSchedule::from_speed(5.0, 20_000, 20).unwrap();
        assert_eq!(s.delta_m(), 0.5);
        assert_eq!(s.effective(), 1);
    }

    #[test]
    fn effective_floors_and_never_drops_below_one() {
        let mut s = SeedSchedule::from_delta(0.4).unwrap();
        assert_eq!(s.effective(), 1);
        s.advance(); // 1.4
        assert_eq!(s.effective(), 1);
        s.advance(); // 1.8
        s.advance(); // 2.2
        assert_eq!(s.effective(), 2);
        s.reset_to(1);
        assert_eq!(s.effective(), 1);
        assert_eq!(s.m(), 1.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SeedSchedule::from_delta(-0.1).is_err());
        assert!(SeedSchedule::from_speed(0.0, 100, 2).is_err());
        assert!(SeedSchedule::from_speed(5.0, 100, 0).is_err());
    }
}
