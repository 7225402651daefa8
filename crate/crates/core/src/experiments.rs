//! Random points of the Siegel upper half space and a hill-climb that
//! maximizes the minimal period.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::bounds::{bs1_lower, ln_factorial};
use crate::error::{Error, Result};
use crate::lattice::{min_period_length, ENUM_DIM_CAP};
use crate::period::PeriodMatrix;

/// Added to `L L^T` so that `Y` stays uniformly positive definite.
pub const Y_SHIFT: f64 = 0.1;
pub const DEFAULT_SPREAD: f64 = 1.0;
/// Slack on `best_m <= (4/pi)(g!)^{1/g}` before a sample counts as a violation.
pub const CONSISTENCY_SLACK: f64 = 1e-6;

/// Probability that an iteration draws a fresh point instead of perturbing
/// the incumbent.
const RESTART_PROB: f64 = 0.1;
const STEP_INIT: f64 = 0.25;
const STEP_MIN: f64 = 1e-4;
const STEP_SHRINK: f64 = 0.97;
const STEP_GROW: f64 = 1.2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub g: usize,
    pub iterations: usize,
    pub best_tau: PeriodMatrix,
    pub best_m: f64,
    pub bs1_reference: f64,
    pub ratio: f64,
    pub seed: u64,
}

/// `tau = X + i Y` coordinates before assembly: `X` symmetric and `L` lower
/// triangular with `Y = L L^T + Y_SHIFT I`.
#[derive(Debug, Clone)]
struct Point {
    x: DMatrix<f64>,
    l: DMatrix<f64>,
}

impl Point {
    fn random<R: Rng>(rng: &mut R, g: usize, spread: f64) -> Self {
        let mut x = DMatrix::zeros(g, g);
        let mut l = DMatrix::zeros(g, g);
        for i in 0..g {
            for j in 0..=i {
                let v = rng.random_range(-0.5..=0.5);
                x[(i, j)] = v;
                x[(j, i)] = v;
                l[(i, j)] = spread * rng.sample::<f64, _>(StandardNormal);
            }
        }
        Self { x, l }
    }

    fn perturb<R: Rng>(&self, rng: &mut R, step: f64, spread: f64) -> Self {
        let g = self.x.nrows();
        let mut next = self.clone();
        for i in 0..g {
            for j in 0..=i {
                // m is invariant under integer translation of X, so wrap back
                let v = self.x[(i, j)] + step * rng.sample::<f64, _>(StandardNormal);
                let v = v - v.round();
                next.x[(i, j)] = v;
                next.x[(j, i)] = v;
                next.l[(i, j)] += step * spread * rng.sample::<f64, _>(StandardNormal);
            }
        }
        next
    }

    fn tau(&self) -> Result<PeriodMatrix> {
        let g = self.x.nrows();
        let y = &self.l * self.l.transpose() + DMatrix::identity(g, g) * Y_SHIFT;
        PeriodMatrix::new(self.x.clone(), y)
    }
}

fn check_args(g: usize, spread: f64) -> Result<()> {
    if g == 0 {
        return Err(Error::BadDimension("genus must be at least 1".into()));
    }
    if !(spread > 0.0 && spread.is_finite()) {
        return Err(Error::InvalidParameter(format!("spread must be positive, got {spread}")));
    }
    Ok(())
}

pub fn random_siegel(g: usize, seed: u64, spread: f64) -> Result<PeriodMatrix> {
    check_args(g, spread)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Point::random(&mut rng, g, spread).tau()
}

/// `(4/pi)(g!)^{1/g}`: no period matrix has a larger minimal period.
pub fn max_min_period_ceiling(g: u32) -> f64 {
    4.0 / PI * (ln_factorial(g) / g as f64).exp()
}

pub fn search_max_min_period(g: usize, iterations: usize, seed: u64) -> Result<SearchResult> {
    search_max_min_period_with(g, iterations, seed, DEFAULT_SPREAD)
}

/// Hill-climb on `(X, L)`. Each iteration either restarts from a fresh random
/// point or perturbs the incumbent with a step that grows on success and
/// shrinks on failure. The random stream does not depend on `iterations`, so
/// a longer run extends a shorter one.
pub fn search_max_min_period_with(
    g: usize,
    iterations: usize,
    seed: u64,
    spread: f64,
) -> Result<SearchResult> {
    check_args(g, spread)?;
    if 2 * g > ENUM_DIM_CAP {
        return Err(Error::DimensionTooLarge { dim: 2 * g, cap: ENUM_DIM_CAP });
    }
    if iterations == 0 {
        return Err(Error::InvalidParameter("iterations must be positive".into()));
    }
    let ceiling = max_min_period_ceiling(g as u32) + CONSISTENCY_SLACK;
    let evaluate = |p: &Point| -> Result<(PeriodMatrix, f64)> {
        let tau = p.tau()?;
        let m = min_period_length(&tau)?;
        if m > ceiling {
            return Err(Error::ConsistencyViolation(format!(
                "sample with m = {m} exceeds the ceiling {ceiling}"
            )));
        }
        Ok((tau, m))
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = Point::random(&mut rng, g, spread);
    let (mut best_tau, mut best_m) = evaluate(&best)?;
    let mut step = STEP_INIT;
    for _ in 1..iterations {
        let restart = rng.random_bool(RESTART_PROB);
        let cand = if restart {
            Point::random(&mut rng, g, spread)
        } else {
            best.perturb(&mut rng, step, spread)
        };
        let (tau, m) = evaluate(&cand)?;
        if m > best_m {
            best = cand;
            best_tau = tau;
            best_m = m;
            if restart {
                step = STEP_INIT;
            } else {
                step = (step * STEP_GROW).min(STEP_INIT);
            }
        } else if !restart {
            step = (step * STEP_SHRINK).max(STEP_MIN);
        }
    }
    let bs1 = bs1_lower(g as u32)?;
    Ok(SearchResult {
        g,
        iterations,
        best_tau,
        best_m,
        bs1_reference: bs1,
        ratio: best_m / bs1,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_points_are_deterministic_and_valid() {
        for g in 1..5 {
            let a = random_siegel(g, 11, 1.0).unwrap();
            assert_eq!(a, random_siegel(g, 11, 1.0).unwrap());
            assert_ne!(a, random_siegel(g, 12, 1.0).unwrap());
            assert!(a.re().iter().all(|v| v.abs() <= 0.5));
        }
        assert!(random_siegel(0, 1, 1.0).is_err());
        assert!(random_siegel(2, 1, 0.0).is_err());
    }

    #[test]
    fn ceiling_values() {
        assert!((max_min_period_ceiling(1) - 4.0 / PI).abs() < 1e-15);
        assert!((max_min_period_ceiling(2) - 4.0 / PI * 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn longer_runs_extend_shorter_ones() {
        let short = search_max_min_period(2, 50, 4).unwrap();
        let long = search_max_min_period(2, 150, 4).unwrap();
        assert!(long.best_m >= short.best_m);
        assert_eq!(short, search_max_min_period(2, 50, 4).unwrap());
    }

    #[test]
    fn rejects_large_genus() {
        assert!(matches!(
            search_max_min_period(11, 10, 0),
            Err(Error::DimensionTooLarge { dim: 22, cap: 20 })
        ));
    }
}
