//! Numerical classes on `C x C` for a curve `C` of genus `g`, in the basis of
//! the two fibers `F1`, `F2` and the diagonal `Delta`.
//!
//! The pairing is `F1.F2 = 1`, `Fi^2 = 0`, `Delta.Fi = 1` and
//! `Delta^2 = 2 - 2g` (adjunction). Everything here is exact rational
//! arithmetic; only [`seshadri_upper_from_surface`] takes a square root.

use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// `a F1 + b F2 + c Delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    genus: u32,
}

impl DivisorClass {
    pub fn new(genus: u32, a: Rational, b: Rational, c: Rational) -> Result<Self> {
        require_genus(genus)?;
        Ok(Self { a, b, c, genus })
    }

    pub fn from_integers(genus: u32, a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(genus, int(a), int(b), int(c))
    }

    pub fn fiber1(genus: u32) -> Result<Self> {
        Self::from_integers(genus, 1, 0, 0)
    }

    pub fn fiber2(genus: u32) -> Result<Self> {
        Self::from_integers(genus, 0, 1, 0)
    }

    pub fn diagonal(genus: u32) -> Result<Self> {
        Self::from_integers(genus, 0, 0, 1)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn coefficients(&self) -> [Rational; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { a: &self.a * s, b: &self.b * s, c: &self.c * s, genus: self.genus }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.genus, rhs.genus, "adding classes on different surfaces");
        DivisorClass { a: &self.a + &rhs.a, b: &self.b + &rhs.b, c: &self.c + &rhs.c, genus: self.genus }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self + &(-rhs)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scale(&int(-1))
    }
}

impl Mul<&DivisorClass> for &Rational {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}

/// The intersection matrix in the basis `(F1, F2, Delta)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingMatrix {
    pub genus: u32,
    pub entries: [[i64; 3]; 3],
}

impl PairingMatrix {
    pub fn new(genus: u32) -> Result<Self> {
        require_genus(genus)?;
        let d2 = 2 - 2 * genus as i64;
        Ok(Self { genus, entries: [[0, 1, 1], [1, 0, 1], [1, 1, d2]] })
    }
}

fn require_genus(g: u32) -> Result<()> {
    if g < 2 {
        return Err(Error::GenusTooSmall { g, min: 2 });
    }
    Ok(())
}

fn require_gonality(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::BadGonality(d));
    }
    Ok(())
}

pub fn intersect(d1: &DivisorClass, d2: &DivisorClass) -> Result<Rational> {
    if d1.genus != d2.genus {
        return Err(Error::GenusMismatch(d1.genus, d2.genus));
    }
    let m = PairingMatrix::new(d1.genus)?.entries;
    let u = d1.coefficients();
    let v = d2.coefficients();
    let mut acc = Rational::zero();
    for i in 0..3 {
        for j in 0..3 {
            if m[i][j] != 0 {
                acc += &u[i] * &v[j] * int(m[i][j]);
            }
        }
    }
    Ok(acc)
}

/// `s^* Theta = (g-1)(F1 + F2) + Delta` under the difference map `s(x, y) = x - y`.
pub fn pullback_theta(g: u32) -> Result<DivisorClass> {
    let k = g as i64 - 1;
    DivisorClass::from_integers(g, k, k, 1)
}

/// `deg_Theta(Sigma) = (s^* Theta)^2` for the image `Sigma` of the difference map.
pub fn sigma_degree(g: u32) -> Result<BigInt> {
    let theta = pullback_theta(g)?;
    let deg = intersect(&theta, &theta)?;
    if !deg.is_integer() {
        return Err(Error::NumericalBreakdown("self-intersection is not an integer".into()));
    }
    Ok(deg.to_integer())
}

/// Multiplicity of `Sigma` at the origin for a non-hyperelliptic curve.
pub fn sigma_multiplicity(g: u32) -> Result<u32> {
    require_genus(g)?;
    Ok(2 * g - 2)
}

/// `sqrt(deg / mult)`, the Seshadri bound coming from a surface of the given
/// degree through the point with the given multiplicity.
pub fn seshadri_upper_from_surface(deg: &Rational, mult: u32) -> Result<f64> {
    if mult < 1 {
        return Err(Error::BadMultiplicity);
    }
    if !deg.is_positive() {
        return Err(Error::BadDegree);
    }
    let ratio = deg / int(mult as i64);
    ratio
        .to_f64()
        .map(f64::sqrt)
        .ok_or_else(|| Error::NumericalBreakdown("ratio not representable".into()))
}

/// Class of `Gamma`, the closure of `{(x, y) : x != y, phi(x) = phi(y)}` for a
/// degree-`d` map `phi : C -> P^1`: `d(F1 + F2) - Delta`.
pub fn gamma_class(g: u32, d: u32) -> Result<DivisorClass> {
    require_gonality(d)?;
    DivisorClass::from_integers(g, d as i64, d as i64, -1)
}

/// Root in `eps` of `Gamma . (s^* Theta - eps Delta) = 0`. Since the left side
/// is linear in `eps` this is `Gamma.s^*Theta / Gamma.Delta`; nefness of
/// `s^* Theta - eps Delta` forces `eps` to be at most this value.
pub fn nef_threshold_gonality(g: u32, d: u32) -> Result<Rational> {
    let gamma = gamma_class(g, d)?;
    let theta = pullback_theta(g)?;
    let delta = DivisorClass::diagonal(g)?;
    let constant = intersect(&gamma, &theta)?;
    let slope = intersect(&gamma, &delta)?;
    if slope.is_zero() {
        return Err(Error::DegenerateLinear);
    }
    Ok(constant / slope)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSummary {
    pub genus: u32,
    pub sigma_degree: String,
    pub sigma_multiplicity: u32,
    pub sqrt_upper: f64,
    pub gonality: Option<u32>,
    pub gonality_threshold: Option<String>,
    pub gonality_threshold_value: Option<f64>,
}

pub fn surface_summary(g: u32, d: Option<u32>) -> Result<SurfaceSummary> {
    let deg = sigma_degree(g)?;
    let mult = sigma_multiplicity(g)?;
    let sqrt_upper = seshadri_upper_from_surface(&Rational::from_integer(deg.clone()), mult)?;
    let threshold = d.map(|d| nef_threshold_gonality(g, d)).transpose()?;
    Ok(SurfaceSummary {
        genus: g,
        sigma_degree: deg.to_string(),
        sigma_multiplicity: mult,
        sqrt_upper,
        gonality: d,
        gonality_threshold_value: threshold.as_ref().and_then(|t| t.to_f64()),
        gonality_threshold: threshold.map(|t| t.to_string()),
    })
}
