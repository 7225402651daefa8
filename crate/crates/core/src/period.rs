//! Period matrices in the Siegel upper half space and the quadratic form the
//! principal polarization induces on the period lattice.
//!
//! A point `tau = X + iY` (with `X`, `Y` real symmetric, `Y > 0`) defines the
//! abelian variety `C^g / (Z^g + tau Z^g)`. The polarization's Hermitian form
//! is `H(v, w) = v^* Y^{-1} w`; evaluated on the period `lambda = m + tau n`
//! it becomes a positive-definite quadratic form in the integer vector
//! `(m, n)`:
//!
//! ```text
//! Q(m, n) = (m + X n)^T Y^{-1} (m + X n) + n^T Y n
//!
//!        [ Y^{-1}        Y^{-1} X         ]
//! G   =  [ X Y^{-1}      X Y^{-1} X + Y   ]
//! ```

use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance on the asymmetry of `Re tau`, `Im tau` and Gram input.
pub const SYM_TOL: f64 = 1e-9;

/// Unvalidated period-matrix data, as it appears on the wire.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawPeriodMatrix {
    pub g: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

/// A validated point of the Siegel upper half space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "RawPeriodMatrix", try_from = "RawPeriodMatrix")]
pub struct PeriodMatrix {
    re: DMatrix<f64>,
    im: DMatrix<f64>,
}

/// A positive-definite quadratic form `Q(v) = v^T G v` on `Z^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramForm {
    gram: DMatrix<f64>,
}

/// The period `m + tau n`, stored by its integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeVector {
    pub m: Vec<i64>,
    pub n: Vec<i64>,
}

pub fn validate_period_matrix(raw: &RawPeriodMatrix) -> Result<PeriodMatrix> {
    let re = square_from_rows(raw.g, &raw.re)?;
    let im = square_from_rows(raw.g, &raw.im)?;
    PeriodMatrix::new(re, im)
}

impl From<PeriodMatrix> for RawPeriodMatrix {
    fn from(tau: PeriodMatrix) -> Self {
        tau.to_raw()
    }
}

impl TryFrom<RawPeriodMatrix> for PeriodMatrix {
    type Error = Error;
    fn try_from(raw: RawPeriodMatrix) -> Result<Self> {
        validate_period_matrix(&raw)
    }
}

fn square_from_rows(g: usize, rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    if g == 0 {
        return Err(Error::BadDimension("g must be at least 1".into()));
    }
    if rows.len() != g || rows.iter().any(|r| r.len() != g) {
        return Err(Error::BadDimension(format!("expected a {g}x{g} matrix")));
    }
    Ok(DMatrix::from_fn(g, g, |i, j| rows[i][j]))
}

/// Averages `a` with its transpose, provided the relative asymmetry is within
/// [`SYM_TOL`].
pub(crate) fn symmetrize(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !a.is_square() || a.nrows() == 0 {
        return Err(Error::BadDimension("expected a nonempty square matrix".into()));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let scale = a.amax().max(1.0);
    let asym = (a - a.transpose()).amax() / scale;
    if asym > SYM_TOL {
        return Err(Error::NotSymmetric { asymmetry: asym, tol: SYM_TOL });
    }
    Ok((a + a.transpose()) * 0.5)
}

impl PeriodMatrix {
    pub fn new(re: DMatrix<f64>, im: DMatrix<f64>) -> Result<Self> {
        if re.shape() != im.shape() {
            return Err(Error::BadDimension("real and imaginary parts differ in shape".into()));
        }
        let re = symmetrize(&re)?;
        let im = symmetrize(&im)?;
        if im.clone().cholesky().is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Self { re, im })
    }

    /// Genus-one convenience constructor for `tau = re + i im`.
    pub fn elliptic(re: f64, im: f64) -> Result<Self> {
        Self::new(DMatrix::from_element(1, 1, re), DMatrix::from_element(1, 1, im))
    }

    pub fn genus(&self) -> usize {
        self.re.nrows()
    }

    pub fn re(&self) -> &DMatrix<f64> {
        &self.re
    }

    pub fn im(&self) -> &DMatrix<f64> {
        &self.im
    }

    pub fn to_raw(&self) -> RawPeriodMatrix {
        let rows = |m: &DMatrix<f64>| {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
                .collect()
        };
        RawPeriodMatrix { g: self.genus(), re: rows(&self.re), im: rows(&self.im) }
    }

    pub fn to_complex(&self) -> DMatrix<Complex<f64>> {
        self.re.zip_map(&self.im, Complex::new)
    }

    /// `tau + B` for an integer symmetric `B`.
    pub fn translate(&self, b: &DMatrix<i64>) -> Result<Self> {
        if b.shape() != self.re.shape() {
            return Err(Error::BadDimension("translation has the wrong shape".into()));
        }
        if b != &b.transpose() {
            return Err(Error::NotSymmetric { asymmetry: f64::INFINITY, tol: 0.0 });
        }
        Self::new(&self.re + b.map(|x| x as f64), self.im.clone())
    }

    /// `-tau^{-1}`, the other generator of the modular action.
    pub fn invert_negate(&self) -> Result<Self> {
        let inv = self
            .to_complex()
            .try_inverse()
            .ok_or_else(|| Error::NumericalBreakdown("tau is singular".into()))?;
        Self::new(inv.map(|z| -z.re), inv.map(|z| -z.im))
    }
}

impl GramForm {
    pub fn new(gram: DMatrix<f64>) -> Result<Self> {
        let gram = symmetrize(&gram)?;
        if gram.clone().cholesky().is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Self { gram })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadDimension("Gram matrix must be square".into()));
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn value(&self, v: &[i64]) -> f64 {
        debug_assert_eq!(v.len(), self.dim());
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            let mut row = 0.0;
            for j in 0..n {
                row += self.gram[(i, j)] * v[j] as f64;
            }
            acc += v[i] as f64 * row;
        }
        acc
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.gram.clone().symmetric_eigen().eigenvalues.min()
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(&self.gram * c)
    }

    /// `U^T G U` for an integer change of basis.
    pub fn transformed(&self, u: &DMatrix<i64>) -> Result<Self> {
        let uf = u.map(|x| x as f64);
        Self::new(uf.transpose() * &self.gram * uf)
    }
}

impl LatticeVector {
    pub fn new(m: Vec<i64>, n: Vec<i64>) -> Self {
        Self { m, n }
    }

    /// Splits a `2g` coordinate vector `(m, n)`.
    pub fn from_coords(coords: &[i64]) -> Self {
        let g = coords.len() / 2;
        Self { m: coords[..g].to_vec(), n: coords[g..].to_vec() }
    }

    pub fn coords(&self) -> Vec<i64> {
        self.m.iter().chain(&self.n).copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().chain(&self.n).all(|&x| x == 0)
    }
}

pub fn gram_from_period(tau: &PeriodMatrix) -> Result<GramForm> {
    let g = tau.genus();
    let x = tau.re();
    let y = tau.im();
    let y_inv = y
        .clone()
        .cholesky()
        .ok_or(Error::NotPositiveDefinite)?
        .inverse();
    let y_inv_x = &y_inv * x;
    let lower_right = x * &y_inv_x + y;

    let mut gram = DMatrix::zeros(2 * g, 2 * g);
    gram.view_mut((0, 0), (g, g)).copy_from(&y_inv);
    gram.view_mut((0, g), (g, g)).copy_from(&y_inv_x);
    gram.view_mut((g, 0), (g, g)).copy_from(&y_inv_x.transpose());
    gram.view_mut((g, g), (g, g)).copy_from(&lower_right);
    GramForm::new(gram)
}

/// `H(lambda, lambda)` for `lambda = m + tau n`, evaluated directly in complex
/// arithmetic as `lambda^* Y^{-1} lambda`.
pub fn hermitian_norm(tau: &PeriodMatrix, v: &LatticeVector) -> Result<f64> {
    let g = tau.genus();
    if v.m.len() != g || v.n.len() != g {
        return Err(Error::BadDimension(format!("lattice vector must have two blocks of length {g}")));
    }
    let t = tau.to_complex();
    let m = DVector::from_iterator(g, v.m.iter().map(|&x| Complex::new(x as f64, 0.0)));
    let n = DVector::from_iterator(g, v.n.iter().map(|&x| Complex::new(x as f64, 0.0)));
    let lambda = m + t * n;
    let y = tau.im().map(|x| Complex::new(x, 0.0));
    let solved = y
        .lu()
        .solve(&lambda)
        .ok_or(Error::NotPositiveDefinite)?;
    Ok(lambda.dotc(&solved).re)
}

/// Block-diagonal period matrix of `A_1 x A_2`.
pub fn product(a: &PeriodMatrix, b: &PeriodMatrix) -> Result<PeriodMatrix> {
    let (g1, g2) = (a.genus(), b.genus());
    let block = |p: &DMatrix<f64>, q: &DMatrix<f64>| {
        let mut out = DMatrix::zeros(g1 + g2, g1 + g2);
        out.view_mut((0, 0), (g1, g1)).copy_from(p);
        out.view_mut((g1, g1), (g2, g2)).copy_from(q);
        out
    };
    PeriodMatrix::new(block(a.re(), b.re()), block(a.im(), b.im()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn raw(re: Vec<Vec<f64>>, im: Vec<Vec<f64>>) -> RawPeriodMatrix {
        RawPeriodMatrix { g: re.len(), re, im }
    }

    #[test]
    fn validates_tau_i() {
        let tau = validate_period_matrix(&raw(vec![vec![0.0]], vec![vec![1.0]])).unwrap();
        assert_eq!(tau.genus(), 1);
    }

    #[test]
    fn rejects_negative_imaginary_part() {
        let err = validate_period_matrix(&raw(vec![vec![0.0]], vec![vec![-1.0]])).unwrap_err();
        assert!(matches!(err, Error::NotPositiveDefinite));
    }

    #[test]
    fn validates_genus_two_example() {
        let tau = validate_period_matrix(&raw(
            vec![vec![0.0, 0.5], vec![0.5, 0.0]],
            vec![vec![1.2, 0.1], vec![0.1, 0.9]],
        ))
        .unwrap();
        // 2x2 eigenvalues: (tr +- sqrt(tr^2 - 4 det)) / 2
        let (tr, det): (f64, f64) = (2.1, 1.2 * 0.9 - 0.01);
        let disc = (tr * tr - 4.0 * det).sqrt();
        let eig = tau.im().clone().symmetric_eigen().eigenvalues;
        let mut eig: Vec<f64> = eig.iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        assert_relative_eq!(eig[1], (tr + disc) / 2.0, epsilon = 1e-12);
        assert_relative_eq!(eig[0], (tr - disc) / 2.0, epsilon = 1e-12);
        assert_relative_eq!(eig[1], 1.2302775637731995, epsilon = 1e-12);
        assert_relative_eq!(eig[0], 0.8697224362268005, epsilon = 1e-12);
    }

    #[test]
    fn rejects_asymmetry_and_bad_shapes() {
        let err = validate_period_matrix(&raw(
            vec![vec![0.0, 0.5], vec![0.4, 0.0]],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
        ))
        .unwrap_err();
        assert!(matches!(err, Error::NotSymmetric { .. }));

        let err = validate_period_matrix(&RawPeriodMatrix { g: 0, re: vec![], im: vec![] }).unwrap_err();
        assert!(matches!(err, Error::BadDimension(_)));

        let err = validate_period_matrix(&RawPeriodMatrix {
            g: 2,
            re: vec![vec![0.0, 0.0], vec![0.0]],
            im: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
        })
        .unwrap_err();
        assert!(matches!(err, Error::BadDimension(_)));
    }

    #[test]
    fn symmetrizes_tiny_asymmetry() {
        let tau = validate_period_matrix(&raw(
            vec![vec![0.0, 0.5 + 1e-12], vec![0.5, 0.0]],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
        ))
        .unwrap();
        assert_eq!(tau.re()[(0, 1)], tau.re()[(1, 0)]);
    }

    #[test]
    fn gram_of_tau_i_is_identity() {
        let tau = PeriodMatrix::elliptic(0.0, 1.0).unwrap();
        let g = gram_from_period(&tau).unwrap();
        assert_eq!(g.matrix(), &DMatrix::<f64>::identity(2, 2));
    }

    #[test]
    fn gram_of_hexagonal_tau() {
        let s3 = 3f64.sqrt();
        let tau = PeriodMatrix::elliptic(0.5, s3 / 2.0).unwrap();
        let g = gram_from_period(&tau).unwrap();
        let expect = [[2.0 / s3, 1.0 / s3], [1.0 / s3, 2.0 / s3]];
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(g.matrix()[(i, j)], expect[i][j], max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn hermitian_norm_examples() {
        let tau = PeriodMatrix::elliptic(0.0, 1.0).unwrap();
        assert_relative_eq!(hermitian_norm(&tau, &LatticeVector::new(vec![1], vec![0])).unwrap(), 1.0);
        assert_relative_eq!(hermitian_norm(&tau, &LatticeVector::new(vec![3], vec![4])).unwrap(), 25.0);
        let s3 = 3f64.sqrt();
        let hex = PeriodMatrix::elliptic(0.5, s3 / 2.0).unwrap();
        let h = hermitian_norm(&hex, &LatticeVector::new(vec![0], vec![1])).unwrap();
        assert_relative_eq!(h, 0.25 / (s3 / 2.0) + 0.75 * (2.0 / s3), max_relative = 1e-14);
        assert_relative_eq!(h, 1.1547005, epsilon = 1e-7);
    }

    #[test]
    fn modular_generators_stay_in_siegel_space() {
        let tau = validate_period_matrix(&raw(
            vec![vec![0.1, 0.3], vec![0.3, -0.2]],
            vec![vec![1.1, 0.2], vec![0.2, 0.7]],
        ))
        .unwrap();
        let b = DMatrix::from_row_slice(2, 2, &[1, -1, -1, 2]);
        assert!(tau.translate(&b).is_ok());
        let s = tau.invert_negate().unwrap();
        let back = s.invert_negate().unwrap();
        assert_relative_eq!(back.re(), tau.re(), epsilon = 1e-12);
        assert_relative_eq!(back.im(), tau.im(), epsilon = 1e-12);
        assert!(tau.translate(&DMatrix::from_row_slice(2, 2, &[0, 1, 0, 0])).is_err());
    }

    #[test]
    fn product_is_block_diagonal() {
        let a = PeriodMatrix::elliptic(0.0, 1.0).unwrap();
        let b = PeriodMatrix::elliptic(0.0, 2.0).unwrap();
        let p = product(&a, &b).unwrap();
        assert_eq!(p.genus(), 2);
        assert_eq!(p.im()[(1, 1)], 2.0);
        assert_eq!(p.im()[(0, 1)], 0.0);
    }
}
