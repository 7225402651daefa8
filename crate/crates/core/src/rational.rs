//! Exact-rational period matrices.
//!
//! When `Re tau` and `Im tau` have rational entries, `Y^{-1}` and the whole
//! Gram matrix are rational, so the minimum found by floating-point
//! enumeration can be re-evaluated exactly at the minimizing vector.

use std::str::FromStr;

use nalgebra::DMatrix;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, ShortestResult};
use crate::period::{GramForm, PeriodMatrix};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq)]
pub struct RationalPeriodMatrix {
    re: Vec<Vec<Rational>>,
    im: Vec<Vec<Rational>>,
}

/// A shortest vector whose value has been recomputed in exact arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactShortest {
    pub result: ShortestResult,
    pub exact_value: Rational,
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    Rational::from_str(t)
        .map_err(|_| Error::Parse(format!("`{s}` is not a rational of the form p or p/q")))
}

impl RationalPeriodMatrix {
    pub fn new(re: Vec<Vec<Rational>>, im: Vec<Vec<Rational>>) -> Result<Self> {
        let g = re.len();
        if g == 0 {
            return Err(Error::BadDimension("g must be at least 1".into()));
        }
        let square = |m: &[Vec<Rational>]| m.len() == g && m.iter().all(|r| r.len() == g);
        if !square(&re) || !square(&im) {
            return Err(Error::BadDimension(format!("expected {g}x{g} matrices")));
        }
        for m in [&re, &im] {
            if !is_symmetric(m) {
                return Err(Error::NotSymmetric { asymmetry: f64::INFINITY, tol: 0.0 });
            }
        }
        if !is_positive_definite(&im) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Self { re, im })
    }

    pub fn parse(re: &[Vec<String>], im: &[Vec<String>]) -> Result<Self> {
        let conv = |m: &[Vec<String>]| -> Result<Vec<Vec<Rational>>> {
            m.iter()
                .map(|row| row.iter().map(|s| parse_rational(s)).collect())
                .collect()
        };
        Self::new(conv(re)?, conv(im)?)
    }

    pub fn genus(&self) -> usize {
        self.re.len()
    }

    pub fn to_float(&self) -> Result<PeriodMatrix> {
        PeriodMatrix::new(to_f64_matrix(&self.re), to_f64_matrix(&self.im))
    }

    /// The Gram matrix of the polarization form, exactly.
    pub fn gram(&self) -> Result<Vec<Vec<Rational>>> {
        let g = self.genus();
        let y_inv = exact_inverse(&self.im)?;
        let y_inv_x = mat_mul(&y_inv, &self.re);
        let x_y_inv_x = mat_mul(&self.re, &y_inv_x);
        let mut out = vec![vec![Rational::zero(); 2 * g]; 2 * g];
        for i in 0..g {
            for j in 0..g {
                out[i][j] = y_inv[i][j].clone();
                out[i][g + j] = y_inv_x[i][j].clone();
                out[g + j][i] = y_inv_x[i][j].clone();
                out[g + i][g + j] = &x_y_inv_x[i][j] + &self.im[i][j];
            }
        }
        Ok(out)
    }

    /// Floating-point enumeration followed by exact evaluation of `Q` at the
    /// returned vector.
    pub fn min_period_length(&self) -> Result<ExactShortest> {
        let exact_gram = self.gram()?;
        let gram = GramForm::new(to_f64_matrix(&exact_gram))?;
        let result = lattice::shortest_vector(&gram)?;
        let exact_value = quadratic_value(&exact_gram, &result.vector.coords());
        Ok(ExactShortest { result, exact_value })
    }
}

fn is_symmetric(m: &[Vec<Rational>]) -> bool {
    (0..m.len()).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

pub fn to_f64_matrix(m: &[Vec<Rational>]) -> DMatrix<f64> {
    let n = m.len();
    DMatrix::from_fn(n, n, |i, j| m[i][j].to_f64().unwrap_or(f64::NAN))
}

/// All pivots of the symmetric Gaussian elimination are positive.
pub fn is_positive_definite(a: &[Vec<Rational>]) -> bool {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    for k in 0..n {
        if !m[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let factor = &m[i][k] / &m[k][k];
            for j in k..n {
                let delta = &factor * &m[k][j];
                m[i][j] -= delta;
            }
        }
    }
    true
}

pub fn exact_inverse(a: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or_else(|| Error::NumericalBreakdown("singular rational matrix".into()))?;
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in 0..2 * n {
                    let delta = &f * &aug[col][c];
                    aug[r][c] -= delta;
                }
            }
        }
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..b.len()).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

pub fn quadratic_value(gram: &[Vec<Rational>], v: &[i64]) -> Rational {
    let n = gram.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            if v[i] != 0 && v[j] != 0 {
                acc += &gram[i][j] * Rational::from_integer(BigInt::from(v[i] * v[j]));
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn exact_gram_of_rational_tau() {
        // tau = 1/2 + i: Y^{-1} = 1, Y^{-1}X = 1/2, X Y^{-1} X + Y = 5/4
        let tau = RationalPeriodMatrix::parse(&[vec!["1/2".into()]], &[vec!["1".into()]]).unwrap();
        let g = tau.gram().unwrap();
        assert_eq!(g[0][0], q("1"));
        assert_eq!(g[0][1], q("1/2"));
        assert_eq!(g[1][1], q("5/4"));
        let s = tau.min_period_length().unwrap();
        assert_eq!(s.exact_value, q("1"));
    }

    #[test]
    fn rejects_non_pd_and_garbage() {
        assert!(matches!(
            RationalPeriodMatrix::parse(&[vec!["0".into()]], &[vec!["-1/3".into()]]),
            Err(Error::NotPositiveDefinite)
        ));
        assert!(matches!(
            RationalPeriodMatrix::parse(&[vec!["x".into()]], &[vec!["1".into()]]),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn inverse_round_trips() {
        let a = vec![vec![q("2"), q("1/3")], vec![q("1/3"), q("5/7")]];
        let inv = exact_inverse(&a).unwrap();
        let id = mat_mul(&a, &inv);
        for (i, row) in id.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, if i == j { Rational::one() } else { Rational::zero() });
            }
        }
        assert!(is_positive_definite(&a));
        assert!(!is_positive_definite(&[vec![q("1"), q("2")], vec![q("2"), q("1")]]));
    }
}
