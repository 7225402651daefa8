//! The radial profile `phi` of the local blow-up construction.
//!
//! `phi(r) = sqrt(lambda^2 + r^2)` near the origin and `phi(r) = r` outside
//! `lambda (1 + eta)`. In between, `phi^2` is blended as a function of
//! `u = r^2`:
//!
//! ```text
//! phi(r)^2 = psi(u) = u + lambda^2 chi(u),   u in [delta^2, b^2],  b = lambda (1 + eta)
//! ```
//!
//! where `chi` falls from 1 to 0 with `chi'` a plateau joined to zero by cubic
//! smoothstep ramps, so `chi` is a C^2 piecewise quartic. `psi'` is the radial
//! eigenvalue of the pulled-back form and `psi / u >= 1` the tangential one,
//! so positivity reduces to `1 - lambda^2 |chi'| > 0`, which the plateau slope
//! guarantees with margin `(L - lambda^2) / (L + lambda^2)`, `L = b^2 - delta^2`.

use crate::error::{Error, Result};

/// Geometry and radial map of a blow-up profile.
pub trait RadialProfile {
    /// Complex dimension `n` of the ambient `C^n`.
    fn dim(&self) -> usize;
    fn lambda(&self) -> f64;
    /// Radius below which the map is the pure twist.
    fn delta(&self) -> f64;
    /// Radius `lambda (1 + eta)` beyond which the map is the identity.
    fn outer_radius(&self) -> f64;
    fn value(&self, r: f64) -> f64;
    fn slope(&self, r: f64) -> f64;
    /// Whether `phi(s) = s` holds exactly at `s = r`.
    fn is_identity_at(&self, r: f64) -> bool {
        r >= self.outer_radius()
    }
}

pub const DEFAULT_ETA: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct BlowupProfile {
    n: usize,
    lambda: f64,
    eta: f64,
    delta: f64,
    /// Knots of the blend in `u = r^2`.
    u0: f64,
    u1: f64,
    /// Width (in `u`) of each smoothstep ramp of `chi'`.
    ramp: f64,
    /// Plateau value of `-chi'`.
    plateau: f64,
}

impl BlowupProfile {
    /// `delta` defaults to `lambda / 10`.
    pub fn new(n: usize, lambda: f64, eta: f64, delta: Option<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidProfile(format!("dimension {n} < 2")));
        }
        if !(lambda > 0.0 && lambda.is_finite()) || !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::InvalidProfile("lambda and eta must be positive".into()));
        }
        let delta = delta.unwrap_or(lambda / 10.0);
        if !(delta > 0.0 && delta < lambda) {
            return Err(Error::InvalidProfile(format!("need 0 < delta < lambda, got {delta}")));
        }
        let b = lambda * (1.0 + eta);
        let u0 = delta * delta;
        let u1 = b * b;
        let len = u1 - u0;
        let l2 = lambda * lambda;
        if len <= l2 {
            // phi(delta) = sqrt(lambda^2 + delta^2) >= b = phi(b): no increasing blend exists
            return Err(Error::InvalidProfile(format!(
                "delta = {delta} too large for eta = {eta}: need delta^2 < lambda^2 ((1+eta)^2 - 1)"
            )));
        }
        let ramp = (len - l2) / 2.0;
        let plateau = 1.0 / (len - ramp);
        Ok(Self { n, lambda, eta, delta, u0, u1, ramp, plateau })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Knots `(delta^2, b^2)` of the blend in `u = r^2`, the ramp width, and
    /// the plateau slope of `-chi`.
    pub fn blend_parameters(&self) -> (f64, f64, f64, f64) {
        (self.u0, self.u1, self.ramp, self.plateau)
    }

    /// Smallest radial eigenvalue `psi'` over the blend.
    pub fn blend_margin(&self) -> f64 {
        1.0 - self.lambda * self.lambda * self.plateau
    }

    /// `(chi, chi', chi'')` at `u` in the blend.
    fn chi(&self, u: f64) -> (f64, f64, f64) {
        let (w, k) = (self.ramp, self.plateau);
        let len = self.u1 - self.u0;
        let t = u - self.u0;
        let (integral, rho, drho) = if t < w {
            let s = t / w;
            (w * (s.powi(3) - s.powi(4) / 2.0), 3.0 * s * s - 2.0 * s.powi(3), (6.0 * s - 6.0 * s * s) / w)
        } else if t <= len - w {
            (w / 2.0 + (t - w), 1.0, 0.0)
        } else {
            let s = (self.u1 - u) / w;
            (
                (len - w) - w * (s.powi(3) - s.powi(4) / 2.0),
                3.0 * s * s - 2.0 * s.powi(3),
                -(6.0 * s - 6.0 * s * s) / w,
            )
        };
        (1.0 - k * integral, -k * rho, -k * drho)
    }

    /// `(psi, psi', psi'')` at `u = r^2` on the blend.
    fn psi(&self, u: f64) -> (f64, f64, f64) {
        let l2 = self.lambda * self.lambda;
        let (c, dc, ddc) = self.chi(u);
        (u + l2 * c, 1.0 + l2 * dc, l2 * ddc)
    }

    /// `phi''(r)`, used to check C^2 joins.
    pub fn curvature(&self, r: f64) -> f64 {
        let l2 = self.lambda * self.lambda;
        if r <= self.delta {
            l2 / (l2 + r * r).powf(1.5)
        } else if r >= self.outer_radius() {
            0.0
        } else {
            let (p, dp, ddp) = self.psi(r * r);
            let phi = p.sqrt();
            let slope = r * dp / phi;
            (dp + 2.0 * r * r * ddp - slope * slope) / phi
        }
    }

    /// `phi(r) phi'(r) / r = psi'(u)` and `(phi / r)^2 = psi / u`: the radial
    /// and tangential eigenvalues of the pulled-back form at radius `r`.
    pub fn eigenvalues_at(&self, r: f64) -> (f64, f64) {
        let phi = self.value(r);
        (phi * self.slope(r) / r, (phi / r).powi(2))
    }
}

impl RadialProfile for BlowupProfile {
    fn dim(&self) -> usize {
        self.n
    }

    fn lambda(&self) -> f64 {
        self.lambda
    }

    fn delta(&self) -> f64 {
        self.delta
    }

    fn outer_radius(&self) -> f64 {
        self.lambda * (1.0 + self.eta)
    }

    fn value(&self, r: f64) -> f64 {
        if r <= self.delta {
            (self.lambda * self.lambda + r * r).sqrt()
        } else if r >= self.outer_radius() {
            r
        } else {
            self.psi(r * r).0.sqrt()
        }
    }

    fn slope(&self, r: f64) -> f64 {
        if r <= self.delta {
            r / (self.lambda * self.lambda + r * r).sqrt()
        } else if r >= self.outer_radius() {
            1.0
        } else {
            let (p, dp, _) = self.psi(r * r);
            r * dp / p.sqrt()
        }
    }
}
