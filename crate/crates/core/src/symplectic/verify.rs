//! Seeded numerical sweeps checking the two-region identity, positivity and
//! normalization of the twisted form.

use std::f64::consts::PI;

use nalgebra::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::forms::{
    closedness_defect, fs_pullback_form, inner_target, omega_std, pullback_two_form, to_complex,
    to_real, PullbackMode,
};
use super::profile::RadialProfile;
use crate::error::{Error, Result};

/// Tolerance for the analytic-vs-finite-difference comparison.
pub const FD_AGREEMENT_TOL: f64 = 1e-6;
pub const NORMALIZATION_RESOLUTION: usize = 512;
pub const NORMALIZATION_TOL: f64 = 1e-6;
pub const CLOSEDNESS_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Outer,
    Inner,
    Positivity,
    Normalization,
    Hopf,
    CrossOracle,
    Closedness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub region: Region,
    pub samples: usize,
    pub max_abs_deviation: f64,
    /// Minimum eigenvalue for positivity, the integral for normalization.
    pub value: Option<f64>,
    pub tol: f64,
    pub pass: bool,
}

impl RegionReport {
    fn deviation(region: Region, samples: usize, max_abs_deviation: f64, tol: f64) -> Self {
        Self { region, samples, max_abs_deviation, value: None, tol, pass: max_abs_deviation <= tol }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
    pub mode: PullbackMode,
}

impl Sweep {
    pub fn new(samples: usize, tol: f64, seed: u64) -> Self {
        Self { samples, tol, seed, mode: PullbackMode::Analytic }
    }

    pub fn with_mode(mut self, mode: PullbackMode) -> Self {
        self.mode = mode;
        self
    }
}

/// Uniform (by volume) point of the shell `r_min < |z| < r_max` in `C^n`.
pub fn sample_shell<R: Rng>(rng: &mut R, n: usize, r_min: f64, r_max: f64) -> Vec<Complex<f64>> {
    let d = 2 * n;
    loop {
        let dir: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let len = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len == 0.0 {
            continue;
        }
        let (a, b) = (r_min.powi(d as i32), r_max.powi(d as i32));
        let u: f64 = rng.random();
        let r = (a + u * (b - a)).powf(1.0 / d as f64);
        if r <= r_min || r >= r_max || r == 0.0 {
            continue;
        }
        return to_complex(&dir.iter().map(|x| x * r / len).collect::<Vec<_>>());
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Region (i): beyond `lambda (1 + eta)` the pulled-back form is `omega_std`.
/// Samples the shell `lambda (1 + eta) < |z| < 3 lambda`.
pub fn verify_region_outer<P: RadialProfile + ?Sized>(p: &P, samples: usize, tol: f64, seed: u64) -> Result<RegionReport> {
    verify_region_outer_with(p, &Sweep::new(samples, tol, seed))
}

pub fn verify_region_outer_with<P: RadialProfile + ?Sized>(p: &P, sweep: &Sweep) -> Result<RegionReport> {
    let mut rng = rng(sweep.seed);
    let std = omega_std(p.dim());
    let mut worst: f64 = 0.0;
    for _ in 0..sweep.samples {
        let z = sample_shell(&mut rng, p.dim(), p.outer_radius(), 3.0 * p.lambda());
        let f = pullback_two_form(&z, p, sweep.mode)?;
        worst = worst.max(f.max_abs_diff(&std));
    }
    Ok(RegionReport::deviation(Region::Outer, sweep.samples, worst, sweep.tol))
}

/// Region (ii): inside `delta` the pulled-back form is
/// `omega_std + lambda^2 q^* sigma`.
pub fn verify_region_inner<P: RadialProfile + ?Sized>(p: &P, samples: usize, tol: f64, seed: u64) -> Result<RegionReport> {
    verify_region_inner_with(p, &Sweep::new(samples, tol, seed))
}

pub fn verify_region_inner_with<P: RadialProfile + ?Sized>(p: &P, sweep: &Sweep) -> Result<RegionReport> {
    let mut rng = rng(sweep.seed);
    let mut worst: f64 = 0.0;
    for _ in 0..sweep.samples {
        let z = sample_shell(&mut rng, p.dim(), 0.0, p.delta());
        let f = pullback_two_form(&z, p, sweep.mode)?;
        let target = inner_target(&z, p.lambda())?;
        worst = worst.max(f.max_abs_diff(&target.matrix));
    }
    Ok(RegionReport::deviation(Region::Inner, sweep.samples, worst, sweep.tol))
}

/// Minimum eigenvalue of the Hermitian matrix of the pulled-back form over
/// the shell `r_min < |z| < r_max`, together with the worst (1,1)-type defect.
pub fn positivity_in_shell<P: RadialProfile + ?Sized>(
    p: &P,
    r_min: f64,
    r_max: f64,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let mut rng = rng(seed);
    let mut min_eig = f64::INFINITY;
    let mut defect: f64 = 0.0;
    for _ in 0..samples {
        let z = sample_shell(&mut rng, p.dim(), r_min, r_max);
        let f = pullback_two_form(&z, p, PullbackMode::Analytic)?;
        defect = defect.max(f.type_11_defect());
        min_eig = min_eig.min(f.min_hermitian_eigenvalue());
    }
    Ok((min_eig, defect))
}

/// Positivity over the inner ball, the blend shell and the outer shell, with
/// the samples split evenly between them.
pub fn verify_positivity<P: RadialProfile + ?Sized>(p: &P, samples: usize, seed: u64) -> Result<RegionReport> {
    let shells = [
        (0.0, p.delta()),
        (p.delta(), p.outer_radius()),
        (p.outer_radius(), 3.0 * p.lambda()),
    ];
    let mut min_eig = f64::INFINITY;
    let mut defect: f64 = 0.0;
    let mut used = 0;
    for (i, (lo, hi)) in shells.into_iter().enumerate() {
        let k = samples / 3 + usize::from(i < samples % 3);
        let (e, d) = positivity_in_shell(p, lo, hi, k, seed.wrapping_add(i as u64))?;
        min_eig = min_eig.min(e);
        defect = defect.max(d);
        used += k;
    }
    Ok(RegionReport {
        region: Region::Positivity,
        samples: used,
        max_abs_deviation: defect,
        value: Some(min_eig),
        tol: 0.0,
        pass: min_eig > 0.0,
    })
}

/// Area of a line in `P^1` under `sigma`, by the midpoint rule.
///
/// The line `{[s : t]}` is covered by the closed unit disc of the chart
/// `w -> (1, w)` and the open unit disc of `w -> (w, 1)`. In each chart the
/// density `sigma(d/dx, d/dy)` is read off [`fs_pullback_form`] and only
/// depends on `|w|`; the radial integral uses `|w| = t / (1 - t)`,
/// `t in [0, 1/2]`, with `resolution` cells.
pub fn fs_normalization(resolution: usize) -> Result<f64> {
    if resolution < 64 {
        return Err(Error::InvalidParameter(format!("resolution {resolution} < 64")));
    }
    let density = |chart: usize, r: f64| -> Result<f64> {
        let (z, a, b) = match chart {
            0 => ([Complex::new(1.0, 0.0), Complex::new(r, 0.0)], 2, 3),
            _ => ([Complex::new(r, 0.0), Complex::new(1.0, 0.0)], 0, 1),
        };
        let f = fs_pullback_form(&z)?;
        Ok(f.matrix[(a, b)])
    };
    let h = 0.5 / resolution as f64;
    let mut total = 0.0;
    for chart in 0..2 {
        for i in 0..resolution {
            let t = (i as f64 + 0.5) * h;
            let r = t / (1.0 - t);
            let dr = 1.0 / ((1.0 - t) * (1.0 - t));
            total += 2.0 * PI * r * density(chart, r)? * dr * h;
        }
    }
    Ok(total)
}

pub fn verify_normalization(resolution: usize, tol: f64) -> Result<RegionReport> {
    let value = fs_normalization(resolution)?;
    let dev = (value - PI).abs();
    Ok(RegionReport {
        region: Region::Normalization,
        samples: resolution,
        max_abs_deviation: dev,
        value: Some(value),
        tol,
        pass: dev <= tol,
    })
}

/// `kappa^* sigma = omega_std|_S`: on the unit sphere the two forms agree on
/// tangent vectors.
pub fn verify_hopf(n: usize, samples: usize, tol: f64, seed: u64) -> Result<RegionReport> {
    let mut rng = rng(seed);
    let std = omega_std(n);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let z = sample_shell(&mut rng, n, 0.999, 1.001);
        let x = to_real(&z);
        let len = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let x: Vec<f64> = x.iter().map(|v| v / len).collect();
        let z = to_complex(&x);
        let tangent = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            let mut u: Vec<f64> = (0..2 * n).map(|_| rng.sample(StandardNormal)).collect();
            let dot: f64 = u.iter().zip(&x).map(|(a, b)| a * b).sum();
            u.iter_mut().zip(&x).for_each(|(a, b)| *a -= dot * b);
            u
        };
        let u = tangent(&mut rng);
        let v = tangent(&mut rng);
        let fs = fs_pullback_form(&z)?;
        let s = super::forms::TwoForm { base: x.clone(), matrix: std.clone() };
        worst = worst.max((fs.eval(&u, &v) - s.eval(&u, &v)).abs());
    }
    Ok(RegionReport::deviation(Region::Hopf, samples, worst, tol))
}

/// Entrywise agreement of the analytic and finite-difference pullbacks over
/// the ball `|z| < 3 lambda`.
pub fn verify_cross_oracle<P: RadialProfile + ?Sized>(
    p: &P,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<RegionReport> {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let z = sample_shell(&mut rng, p.dim(), 0.0, 3.0 * p.lambda());
        let a = pullback_two_form(&z, p, PullbackMode::Analytic)?;
        let f = pullback_two_form(&z, p, PullbackMode::FiniteDifference)?;
        worst = worst.max(a.max_abs_diff(&f.matrix));
    }
    Ok(RegionReport::deviation(Region::CrossOracle, samples, worst, tol))
}

/// `d(omega_std + lambda^2 q^* sigma) = 0`, checked by finite differences on
/// the outer three quarters `delta/4 < |z| < delta` of the inner ball; the
/// coefficients grow like `|z|^{-2}`, so the stencil step is `2e-4 |z|`.
pub fn verify_closedness<P: RadialProfile + ?Sized>(p: &P, samples: usize, tol: f64, seed: u64) -> Result<RegionReport> {
    let mut rng = rng(seed);
    let lambda = p.lambda();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let z = sample_shell(&mut rng, p.dim(), p.delta() / 4.0, p.delta());
        let x = to_real(&z);
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let d = closedness_defect(|y| Ok(inner_target(&to_complex(y), lambda)?.matrix), &x, 2e-4 * r)?;
        worst = worst.max(d);
    }
    Ok(RegionReport::deviation(Region::Closedness, samples, worst, tol))
}

/// The full battery run by the `blowup` command.
pub fn verify_all<P: RadialProfile + ?Sized>(p: &P, sweep: &Sweep) -> Result<Vec<RegionReport>> {
    Ok(vec![
        verify_region_outer_with(p, sweep)?,
        verify_region_inner_with(p, sweep)?,
        verify_positivity(p, sweep.samples, sweep.seed)?,
        verify_normalization(NORMALIZATION_RESOLUTION, NORMALIZATION_TOL)?,
        verify_hopf(p.dim(), sweep.samples, sweep.tol.max(1e-12), sweep.seed)?,
        verify_cross_oracle(p, sweep.samples, FD_AGREEMENT_TOL, sweep.seed)?,
        verify_closedness(p, sweep.samples.min(200), CLOSEDNESS_TOL, sweep.seed)?,
    ])
}
