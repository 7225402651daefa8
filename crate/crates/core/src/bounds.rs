//! Closed-form Seshadri-constant and period bounds for principally polarized
//! abelian varieties, and a report that cross-checks them.
//!
//! Every value here bounds `eps(A)`, the supremum of `eps >= 0` for which
//! `f^* c_1(Theta) - eps [E]` stays nef on the blow-up of `A` at a point, or
//! bounds the minimal period `m(A)`. The nef cone itself is never computed.

use std::f64::consts::PI;

use num::{BigInt, BigRational, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::min_period_length;
use crate::period::PeriodMatrix;

/// Relative slack used by the consistency comparisons.
pub const FLAG_TOL: f64 = 1e-12;

/// `ln(g!)`, exact product below 21 and log-gamma above.
pub fn ln_factorial(g: u32) -> f64 {
    if g <= 20 {
        let f: u64 = (1..=g as u64).product();
        (f as f64).ln()
    } else {
        statrs::function::gamma::ln_gamma(g as f64 + 1.0)
    }
}

fn require_genus(g: u32, min: u32) -> Result<()> {
    if g < min {
        return Err(Error::GenusTooSmall { g, min });
    }
    Ok(())
}

fn require_gonality(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::BadGonality(d));
    }
    Ok(())
}

/// `pi m / 4`: the radius-`sqrt(m)/2` ball embeds in `A`, so `eps(A)` is at
/// least `pi (sqrt(m)/2)^2`.
pub fn seshadri_lower_from_period(m_a: f64) -> f64 {
    PI * m_a / 4.0
}

/// `(g!)^{1/g}`.
pub fn ekl_upper(g: u32) -> Result<f64> {
    require_genus(g, 1)?;
    Ok((ln_factorial(g) / g as f64).exp())
}

/// `(2 g!)^{1/g} / pi`, the period length some p.p.a.v. of dimension `g` attains.
pub fn bs1_lower(g: u32) -> Result<f64> {
    require_genus(g, 1)?;
    Ok(((2f64.ln() + ln_factorial(g)) / g as f64).exp() / PI)
}

/// `2^{1/g} (g!)^{1/g} / 4`, valid for a very general p.p.a.v.
pub fn corollary_lower(g: u32) -> Result<f64> {
    require_genus(g, 1)?;
    Ok(((2f64.ln() + ln_factorial(g)) / g as f64).exp() / 4.0)
}

/// `(3/pi) ln(4g + 3)`, upper bound on `m(J(C))` for a curve of genus `g`.
pub fn bs2_jacobian_upper(g: u32) -> Result<f64> {
    require_genus(g, 2)?;
    Ok(3.0 / PI * (4.0 * g as f64 + 3.0).ln())
}

/// `sqrt(g)`.
pub fn jacobian_seshadri_upper(g: u32) -> Result<f64> {
    require_genus(g, 2)?;
    Ok((g as f64).sqrt())
}

/// `g d / (g + d - 1)` for a curve with a degree-`d` map to the line.
pub fn gonality_seshadri_upper(g: u32, d: u32) -> Result<BigRational> {
    require_genus(g, 2)?;
    require_gonality(d)?;
    Ok(BigRational::new(BigInt::from(g) * BigInt::from(d), BigInt::from(g + d - 1)))
}

/// `4d/pi`.
pub fn gonality_period_upper(d: u32) -> Result<f64> {
    require_gonality(d)?;
    Ok(4.0 * d as f64 / PI)
}

/// Which of the two Jacobian period bounds is smaller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrongerBound {
    Bs2,
    Gonality,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobianComparison {
    pub g: u32,
    pub d: u32,
    pub gonality_period_upper: f64,
    pub bs2_jacobian_upper: f64,
    pub stronger: StrongerBound,
}

pub fn compare_jacobian_bounds(g: u32, d: u32) -> Result<JacobianComparison> {
    let gonality = gonality_period_upper(d)?;
    let bs2 = bs2_jacobian_upper(g)?;
    Ok(JacobianComparison {
        g,
        d,
        gonality_period_upper: gonality,
        bs2_jacobian_upper: bs2,
        stronger: if gonality < bs2 { StrongerBound::Gonality } else { StrongerBound::Bs2 },
    })
}

/// Smallest genus `g >= 2` at which `4d/pi` beats the logarithmic bound.
pub fn gonality_crossover_genus(d: u32) -> Result<u32> {
    require_gonality(d)?;
    // (3/pi) ln(4g+3) > 4d/pi  <=>  4g + 3 > exp(4d/3)
    let mut g = (((4.0 * d as f64 / 3.0).exp() - 3.0) / 4.0).floor().max(2.0) as u32;
    while compare_jacobian_bounds(g, d)?.stronger != StrongerBound::Gonality {
        g += 1;
    }
    while g > 2 && compare_jacobian_bounds(g - 1, d)?.stronger == StrongerBound::Gonality {
        g -= 1;
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConsistencyFlag {
    /// `max(1, pi m / 4) > (g!)^{1/g}`.
    LowerExceedsEkl,
    /// `pi m / 4 > sqrt(g)` for an input declared to be a Jacobian.
    JacobianContradiction,
    /// `m > (4/pi)(g!)^{1/g}`, impossible for a genuine p.p.a.v.
    PeriodExceedsEkl,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub g: u32,
    pub m_a: Option<f64>,
    pub lower_theorem: Option<f64>,
    pub lower_nakamaye: f64,
    pub lower_corollary: f64,
    pub upper_ekl: f64,
    pub jacobian_upper_sqrt: Option<f64>,
    pub gonality_upper: Option<f64>,
    pub gonality_upper_exact: Option<String>,
    pub bs1_benchmark: f64,
    pub bs2_jacobian_upper: Option<f64>,
    pub gonality_period_upper: Option<f64>,
    pub effective_lower: f64,
    /// `upper_ekl - effective_lower`; whether it closes for very general `A`
    /// at large `g` is open.
    pub ekl_gap: f64,
    pub consistency_flags: Vec<ConsistencyFlag>,
}

impl BoundsReport {
    pub fn is_consistent(&self) -> bool {
        self.consistency_flags.is_empty()
    }
}

fn exceeds(a: f64, b: f64) -> bool {
    a > b * (1.0 + FLAG_TOL)
}

/// Builds the report from a period minimum that is already known.
pub fn bounds_report_from_minimum(
    m_a: Option<f64>,
    g: u32,
    d: Option<u32>,
    is_jacobian: bool,
) -> Result<BoundsReport> {
    require_genus(g, 1)?;
    if let Some(m) = m_a {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::InvalidParameter(format!("m(A) = {m} must be positive")));
        }
    }
    let upper_ekl = ekl_upper(g)?;
    let lower_theorem = m_a.map(seshadri_lower_from_period);
    let lower_nakamaye = 1.0;
    let effective_lower = lower_theorem.map_or(lower_nakamaye, |t| t.max(lower_nakamaye));

    let jacobian_upper_sqrt = if is_jacobian { Some(jacobian_seshadri_upper(g)?) } else { None };
    let bs2 = if is_jacobian { Some(bs2_jacobian_upper(g)?) } else { None };
    let (gonality_upper, gonality_upper_exact, gonality_period) = match d {
        Some(d) => {
            let q = gonality_seshadri_upper(g, d)?;
            (q.to_f64(), Some(q.to_string()), Some(gonality_period_upper(d)?))
        }
        None => (None, None, None),
    };

    let mut flags = Vec::new();
    if exceeds(effective_lower, upper_ekl) {
        flags.push(ConsistencyFlag::LowerExceedsEkl);
    }
    if let (Some(t), Some(j)) = (lower_theorem, jacobian_upper_sqrt) {
        if exceeds(t, j) {
            flags.push(ConsistencyFlag::JacobianContradiction);
        }
    }
    if let Some(m) = m_a {
        if exceeds(m, 4.0 / PI * upper_ekl) {
            flags.push(ConsistencyFlag::PeriodExceedsEkl);
        }
    }

    Ok(BoundsReport {
        g,
        m_a,
        lower_theorem,
        lower_nakamaye,
        lower_corollary: corollary_lower(g)?,
        upper_ekl,
        jacobian_upper_sqrt,
        gonality_upper,
        gonality_upper_exact,
        bs1_benchmark: bs1_lower(g)?,
        bs2_jacobian_upper: bs2,
        gonality_period_upper: gonality_period,
        effective_lower,
        ekl_gap: upper_ekl - effective_lower,
        consistency_flags: flags,
    })
}

pub fn bounds_report(
    tau: Option<&PeriodMatrix>,
    g: u32,
    d: Option<u32>,
    is_jacobian: bool,
) -> Result<BoundsReport> {
    let m_a = match tau {
        Some(t) => {
            if t.genus() != g as usize {
                return Err(Error::BadDimension(format!(
                    "period matrix has genus {} but {g} was requested",
                    t.genus()
                )));
            }
            Some(min_period_length(t)?)
        }
        None => None,
    };
    bounds_report_from_minimum(m_a, g, d, is_jacobian)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn lower_from_period_examples() {
        assert_relative_eq!(seshadri_lower_from_period(1.0), std::f64::consts::FRAC_PI_4, epsilon = 1e-15);
        assert_relative_eq!(seshadri_lower_from_period(2.0 / 3f64.sqrt()), 0.9068997, epsilon = 1e-7);
        assert_relative_eq!(seshadri_lower_from_period(4.0 / PI), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn ekl_examples() {
        assert_eq!(ekl_upper(1).unwrap(), 1.0);
        assert_relative_eq!(ekl_upper(2).unwrap(), 2f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(ekl_upper(5).unwrap(), 2.6051711, epsilon = 1e-7);
        assert!(ekl_upper(0).is_err());
    }

    #[test]
    fn ln_factorial_matches_sum_of_logs() {
        for g in [1u32, 2, 10, 20, 21, 50, 170, 1000, 10_000] {
            let oracle: f64 = (1..=g).map(|k| (k as f64).ln()).sum();
            assert_relative_eq!(ln_factorial(g), oracle, max_relative = 1e-12);
        }
    }

    #[test]
    fn bs1_examples() {
        assert_relative_eq!(bs1_lower(1).unwrap(), 2.0 / PI, max_relative = 1e-15);
        assert_relative_eq!(bs1_lower(2).unwrap(), 2.0 / PI, max_relative = 1e-15);
        assert_relative_eq!(bs1_lower(4).unwrap(), 48f64.powf(0.25) / PI, max_relative = 1e-14);
        assert_relative_eq!(bs1_lower(4).unwrap(), 0.837838738544705, epsilon = 1e-12);
    }

    #[test]
    fn corollary_examples() {
        assert_relative_eq!(corollary_lower(1).unwrap(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(corollary_lower(2).unwrap(), 0.5, max_relative = 1e-15);
        for g in 1..=30 {
            assert_relative_eq!(
                corollary_lower(g).unwrap(),
                PI / 4.0 * bs1_lower(g).unwrap(),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn bs2_and_jacobian_examples() {
        assert_relative_eq!(bs2_jacobian_upper(2).unwrap(), 2.289821314095297, epsilon = 1e-12);
        assert_relative_eq!(bs2_jacobian_upper(3).unwrap(), 2.585997453878508, epsilon = 1e-12);
        assert!(matches!(bs2_jacobian_upper(1), Err(Error::GenusTooSmall { g: 1, min: 2 })));
        assert_eq!(jacobian_seshadri_upper(4).unwrap(), 2.0);
        assert_relative_eq!(jacobian_seshadri_upper(2).unwrap(), std::f64::consts::SQRT_2, epsilon = 1e-15);
        assert!(jacobian_seshadri_upper(1).is_err());
    }

    #[test]
    fn gonality_examples() {
        let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
        assert_eq!(gonality_seshadri_upper(2, 2).unwrap(), r(4, 3));
        assert_eq!(gonality_seshadri_upper(3, 2).unwrap(), r(3, 2));
        let big = gonality_seshadri_upper(2, 100).unwrap();
        assert_eq!(big, r(200, 101));
        // weaker than sqrt(2) there
        assert!(big.to_f64().unwrap() > 2f64.sqrt());
        assert!(matches!(gonality_seshadri_upper(2, 1), Err(Error::BadGonality(1))));
        assert_relative_eq!(gonality_period_upper(2).unwrap(), 2.5464791, epsilon = 1e-7);
        assert_relative_eq!(gonality_period_upper(3).unwrap(), 3.8197186, epsilon = 1e-7);
        assert!(gonality_period_upper(1).is_err());
    }

    #[test]
    fn crossover_for_hyperelliptic_is_genus_three() {
        assert_eq!(gonality_crossover_genus(2).unwrap(), 3);
        let c = gonality_crossover_genus(5).unwrap();
        assert_eq!(compare_jacobian_bounds(c, 5).unwrap().stronger, StrongerBound::Gonality);
        assert_eq!(compare_jacobian_bounds(c - 1, 5).unwrap().stronger, StrongerBound::Bs2);
    }

    #[test]
    fn report_for_tau_i() {
        let tau = PeriodMatrix::elliptic(0.0, 1.0).unwrap();
        let r = bounds_report(Some(&tau), 1, None, false).unwrap();
        assert_eq!(r.m_a, Some(1.0));
        assert_relative_eq!(r.lower_theorem.unwrap(), PI / 4.0);
        assert_eq!(r.effective_lower, 1.0);
        assert_eq!(r.upper_ekl, 1.0);
        assert!(r.consistency_flags.is_empty());
    }

    #[test]
    fn report_without_tau() {
        let r = bounds_report(None, 5, None, false).unwrap();
        assert_relative_eq!(r.lower_corollary, 0.2f64.exp2() / 4.0 * 2.6051711, epsilon = 1e-6);
        assert_relative_eq!(r.lower_corollary, 0.7481389348694225, epsilon = 1e-12);
        assert_relative_eq!(r.upper_ekl, 2.6052, epsilon = 1e-4);
        assert_relative_eq!(r.bs1_benchmark, 0.9525600768317929, epsilon = 1e-12);
        assert_eq!(r.effective_lower, 1.0);
    }

    #[test]
    fn jacobian_report() {
        let r = bounds_report(None, 2, Some(2), true).unwrap();
        assert_relative_eq!(r.gonality_upper.unwrap(), 4.0 / 3.0);
        assert_eq!(r.gonality_upper_exact.as_deref(), Some("4/3"));
        assert_relative_eq!(r.jacobian_upper_sqrt.unwrap(), 2f64.sqrt());
        assert_relative_eq!(r.gonality_period_upper.unwrap(), 2.546, epsilon = 1e-3);
        assert_relative_eq!(r.bs2_jacobian_upper.unwrap(), 2.290, epsilon = 1e-3);
    }

    #[test]
    fn flags_fire_on_impossible_minimum() {
        // m = 2 at g = 1 would need eps >= pi/2 > 1
        let r = bounds_report_from_minimum(Some(2.0), 1, None, false).unwrap();
        assert!(r.consistency_flags.contains(&ConsistencyFlag::LowerExceedsEkl));
        assert!(r.consistency_flags.contains(&ConsistencyFlag::PeriodExceedsEkl));
        let r = bounds_report_from_minimum(Some(2.0), 2, None, true).unwrap();
        assert!(r.consistency_flags.contains(&ConsistencyFlag::JacobianContradiction));
    }

    #[test]
    fn genus_mismatch_is_rejected() {
        let tau = PeriodMatrix::elliptic(0.0, 1.0).unwrap();
        assert!(matches!(bounds_report(Some(&tau), 2, None, false), Err(Error::BadDimension(_))));
    }
}
