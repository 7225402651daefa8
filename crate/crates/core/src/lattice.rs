//! Exact minimum of a positive-definite quadratic form over nonzero integer
//! vectors.
//!
//! [`shortest_vector`] runs LLL on the Gram matrix (tracking the unimodular
//! change of basis) and then a Fincke-Pohst enumeration whose radius starts at
//! the smallest reduced diagonal entry and shrinks on every improvement.
//! [`brute_force_shortest`] is the exhaustive box scan used as an oracle.

use nalgebra::DMatrix;
use num::{BigInt, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::period::{gram_from_period, GramForm, LatticeVector, PeriodMatrix};

pub const DEFAULT_LLL_DELTA: f64 = 0.99;
pub const ENUM_DIM_CAP: usize = 20;

/// Values within this relative distance of the minimum count as ties.
pub const TIE_TOL: f64 = 1e-10;

const MAX_LLL_STEPS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Enumeration,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShortestResult {
    pub value: f64,
    pub vector: LatticeVector,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvpOptions {
    pub lll_delta: f64,
    pub enum_dim_cap: usize,
}

impl Default for SvpOptions {
    fn default() -> Self {
        Self { lll_delta: DEFAULT_LLL_DELTA, enum_dim_cap: ENUM_DIM_CAP }
    }
}

/// An LLL-reduced basis: the columns of `basis` are the reduced vectors in
/// original coordinates and `gram_reduced = basis^T G basis`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedBasis {
    pub basis: DMatrix<i64>,
    pub gram_reduced: DMatrix<f64>,
}

impl ReducedBasis {
    /// Value of the first reduced vector; an upper bound for the minimum.
    pub fn first_value(&self) -> f64 {
        self.gram_reduced[(0, 0)]
    }

    /// Exact determinant of the change of basis (Bareiss elimination).
    pub fn determinant(&self) -> BigInt {
        integer_determinant(&self.basis)
    }

    pub fn vector(&self, i: usize) -> Vec<i64> {
        self.basis.column(i).iter().copied().collect()
    }
}

pub fn integer_determinant(m: &DMatrix<i64>) -> BigInt {
    let n = m.nrows();
    let mut a: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| BigInt::from(m[(i, j)])).collect()).collect();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    sign * &a[n - 1][n - 1]
}

/// Gram-Schmidt data of the first `upto + 1` basis vectors, computed from the
/// Gram matrix alone.
fn gram_schmidt(r: &DMatrix<f64>, upto: usize) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let n = r.nrows();
    let mut mu = vec![vec![0.0; n]; n];
    let mut b = vec![0.0; n];
    for i in 0..=upto {
        for j in 0..i {
            let mut s = r[(i, j)];
            for l in 0..j {
                s -= mu[j][l] * mu[i][l] * b[l];
            }
            mu[i][j] = s / b[j];
        }
        let mut s = r[(i, i)];
        for l in 0..i {
            s -= mu[i][l] * mu[i][l] * b[l];
        }
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::NumericalBreakdown(format!(
                "Gram-Schmidt norm {s:e} at index {i} is not positive"
            )));
        }
        b[i] = s;
    }
    Ok((mu, b))
}

/// `b_k <- b_k - q b_j` applied to the basis and to the Gram matrix.
fn subtract_column(u: &mut DMatrix<i64>, r: &mut DMatrix<f64>, k: usize, j: usize, q: i64) -> Result<()> {
    for row in 0..u.nrows() {
        u[(row, k)] = u[(row, j)]
            .checked_mul(q)
            .and_then(|d| u[(row, k)].checked_sub(d))
            .ok_or_else(|| Error::NumericalBreakdown("basis entries overflow i64".into()))?;
    }
    let qf = q as f64;
    let n = r.nrows();
    for i in 0..n {
        r[(k, i)] -= qf * r[(j, i)];
    }
    for i in 0..n {
        r[(i, k)] -= qf * r[(i, j)];
    }
    Ok(())
}

fn swap_columns(u: &mut DMatrix<i64>, r: &mut DMatrix<f64>, a: usize, b: usize) {
    u.swap_columns(a, b);
    r.swap_columns(a, b);
    r.swap_rows(a, b);
}

pub fn lll_reduce(g: &GramForm, delta: f64) -> Result<ReducedBasis> {
    if !(delta > 0.25 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("LLL delta {delta} not in (1/4, 1)")));
    }
    let n = g.dim();
    let mut u = DMatrix::<i64>::identity(n, n);
    let mut r = g.matrix().clone();
    let mut k = 1;
    let mut steps = 0;
    while k < n {
        steps += 1;
        if steps > MAX_LLL_STEPS {
            return Err(Error::NumericalBreakdown("LLL did not terminate".into()));
        }
        let (mut mu, b) = gram_schmidt(&r, k)?;
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if q == 0.0 {
                continue;
            }
            if q.abs() > 2f64.powi(52) {
                return Err(Error::NumericalBreakdown("size-reduction coefficient too large".into()));
            }
            subtract_column(&mut u, &mut r, k, j, q as i64)?;
            for l in 0..j {
                mu[k][l] -= q * mu[j][l];
            }
            mu[k][j] -= q;
        }
        if b[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1] {
            k += 1;
        } else {
            swap_columns(&mut u, &mut r, k, k - 1);
            k = (k - 1).max(1);
        }
    }
    let uf = u.map(|x| x as f64);
    let gram_reduced = uf.transpose() * g.matrix() * &uf;
    Ok(ReducedBasis { basis: u, gram_reduced })
}

/// Flips `v` so its first nonzero coordinate is positive.
fn sign_normalized(mut v: Vec<i64>) -> Vec<i64> {
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// Among candidate vectors (each already a near-minimizer), keep the ones
/// tied with the minimum and return the canonical representative: sign
/// normalized, then lexicographically greatest.
fn select_minimizer(g: &GramForm, candidates: Vec<Vec<i64>>) -> Option<(f64, Vec<i64>)> {
    let valued: Vec<(f64, Vec<i64>)> = candidates
        .into_iter()
        .map(sign_normalized)
        .map(|v| (g.value(&v), v))
        .collect();
    let best = valued.iter().map(|(q, _)| *q).fold(f64::INFINITY, f64::min);
    let cutoff = best * (1.0 + TIE_TOL);
    valued
        .into_iter()
        .filter(|(q, _)| *q <= cutoff)
        .max_by(|a, b| a.1.cmp(&b.1))
}

/// Fincke-Pohst state on the reduced Gram matrix, written as
/// `Q(x) = sum_i d_i (x_i + sum_{j>i} c_ij x_j)^2`.
struct Enumerator {
    diag: Vec<f64>,
    coef: DMatrix<f64>,
    x: Vec<i64>,
    best: f64,
    bound: f64,
    found: Vec<(f64, Vec<i64>)>,
}

impl Enumerator {
    fn new(r: &DMatrix<f64>) -> Result<Self> {
        let n = r.nrows();
        let mut q = r.clone();
        for i in 0..n {
            if !(q[(i, i)] > 0.0) {
                return Err(Error::NumericalBreakdown("nonpositive pivot in enumeration".into()));
            }
            for j in i + 1..n {
                q[(j, i)] = q[(i, j)];
                q[(i, j)] /= q[(i, i)];
            }
            for k in i + 1..n {
                for l in k..n {
                    q[(k, l)] -= q[(k, i)] * q[(i, l)];
                }
            }
        }
        let diag = (0..n).map(|i| q[(i, i)]).collect();
        let best = (0..n).map(|i| r[(i, i)]).fold(f64::INFINITY, f64::min);
        Ok(Self {
            diag,
            coef: q,
            x: vec![0; n],
            best,
            bound: best * (1.0 + TIE_TOL),
            found: Vec::new(),
        })
    }

    fn record(&mut self, value: f64) {
        if value < self.best {
            self.best = value;
            self.bound = value * (1.0 + TIE_TOL);
            let bound = self.bound;
            self.found.retain(|(q, _)| *q <= bound);
        }
        self.found.push((value, self.x.clone()));
    }

    /// Visits level `i` given the partial sum over levels above it. Only
    /// vectors whose last nonzero coordinate is positive are produced.
    fn descend(&mut self, i: usize, partial: f64, zero_above: bool) {
        let n = self.x.len();
        let center: f64 = (i + 1..n).map(|j| self.coef[(i, j)] * self.x[j] as f64).sum();
        let remaining = self.bound - partial;
        if remaining < 0.0 {
            return;
        }
        let half = (remaining / self.diag[i]).sqrt();
        let mut lo = (-center - half).ceil() as i64;
        let hi = (-center + half).floor() as i64;
        if zero_above {
            lo = lo.max(0);
        }
        for xi in lo..=hi {
            let t = xi as f64 + center;
            let value = partial + self.diag[i] * t * t;
            if value > self.bound {
                continue;
            }
            self.x[i] = xi;
            let still_zero = zero_above && xi == 0;
            if i == 0 {
                if !still_zero {
                    self.record(value);
                }
            } else {
                self.descend(i - 1, value, still_zero);
            }
        }
        self.x[i] = 0;
    }
}

fn enumerate_near_minimizers(g: &GramForm, opts: &SvpOptions) -> Result<Vec<Vec<i64>>> {
    let n = g.dim();
    if n > opts.enum_dim_cap {
        return Err(Error::DimensionTooLarge { dim: n, cap: opts.enum_dim_cap });
    }
    let reduced = lll_reduce(g, opts.lll_delta)?;
    let mut en = Enumerator::new(&reduced.gram_reduced)?;
    en.descend(n - 1, 0.0, true);
    let u = &reduced.basis;
    en.found
        .into_iter()
        .map(|(_, x)| {
            (0..n)
                .map(|row| {
                    let s: i128 = (0..n).map(|c| u[(row, c)] as i128 * x[c] as i128).sum();
                    i64::try_from(s)
                        .map_err(|_| Error::NumericalBreakdown("lattice vector overflows i64".into()))
                })
                .collect()
        })
        .collect()
}

pub fn shortest_vector(g: &GramForm) -> Result<ShortestResult> {
    shortest_vector_with(g, &SvpOptions::default())
}

pub fn shortest_vector_with(g: &GramForm, opts: &SvpOptions) -> Result<ShortestResult> {
    let candidates = enumerate_near_minimizers(g, opts)?;
    let (value, v) = select_minimizer(g, candidates)
        .ok_or_else(|| Error::NumericalBreakdown("enumeration found no vector".into()))?;
    Ok(ShortestResult { value, vector: LatticeVector::from_coords(&v), method: Method::Enumeration })
}

/// Every minimizer (both signs), sorted, together with the minimum.
pub fn minimal_vectors(g: &GramForm) -> Result<(f64, Vec<Vec<i64>>)> {
    let candidates = enumerate_near_minimizers(g, &SvpOptions::default())?;
    let best = candidates.iter().map(|v| g.value(v)).fold(f64::INFINITY, f64::min);
    let mut out: Vec<Vec<i64>> = candidates
        .into_iter()
        .filter(|v| g.value(v) <= best * (1.0 + TIE_TOL))
        .flat_map(|v| {
            let neg = v.iter().map(|x| -x).collect();
            [v, neg]
        })
        .collect();
    out.sort();
    out.dedup();
    Ok((best, out))
}

/// Largest coordinate any minimizer can have: a vector with `Q(v) <= q1`
/// satisfies `lambda_min |v|^2 <= q1`. `q1` is the smaller of the least
/// diagonal entry and the value of the first LLL vector, both re-evaluated on
/// `G` itself.
pub fn certified_box(g: &GramForm) -> Result<i64> {
    let n = g.dim();
    let mut q1 = (0..n).map(|i| g.matrix()[(i, i)]).fold(f64::INFINITY, f64::min);
    if let Ok(red) = lll_reduce(g, DEFAULT_LLL_DELTA) {
        q1 = q1.min(g.value(&red.vector(0)));
    }
    let lambda_min = g.min_eigenvalue();
    if !(lambda_min > 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let radius = (q1 / lambda_min).sqrt() * (1.0 + 1e-9);
    if radius > i64::MAX as f64 / 4.0 {
        return Err(Error::NumericalBreakdown("certified radius is unbounded".into()));
    }
    Ok(radius.floor() as i64)
}

pub fn brute_force_shortest(g: &GramForm, box_size: i64) -> Result<ShortestResult> {
    if box_size < 1 {
        return Err(Error::InvalidParameter("box must be a positive integer".into()));
    }
    let required = certified_box(g)?;
    if required > box_size {
        return Err(Error::BoxTooSmall { required, given: box_size });
    }
    let n = g.dim();
    let mut v = vec![-box_size; n];
    let mut best = f64::INFINITY;
    let mut ties: Vec<Vec<i64>> = Vec::new();
    loop {
        let first_nonzero = v.iter().find(|&&x| x != 0);
        if first_nonzero.is_some_and(|&x| x > 0) {
            let q = g.value(&v);
            if q < best {
                best = q;
                ties.retain(|w| g.value(w) <= best * (1.0 + TIE_TOL));
            }
            if q <= best * (1.0 + TIE_TOL) {
                ties.push(v.clone());
            }
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                let (value, w) = select_minimizer(g, ties)
                    .ok_or_else(|| Error::NumericalBreakdown("empty search box".into()))?;
                return Ok(ShortestResult {
                    value,
                    vector: LatticeVector::from_coords(&w),
                    method: Method::BruteForce,
                });
            }
            if v[i] < box_size {
                v[i] += 1;
                break;
            }
            v[i] = -box_size;
            i += 1;
        }
    }
}

/// `m(A)`: the minimum of the polarization form over nonzero periods.
pub fn min_period_length(tau: &PeriodMatrix) -> Result<f64> {
    Ok(shortest_vector(&gram_from_period(tau)?)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn hexagonal() -> GramForm {
        let s3 = 3f64.sqrt();
        GramForm::from_rows(&[vec![2.0 / s3, 1.0 / s3], vec![1.0 / s3, 2.0 / s3]]).unwrap()
    }

    #[test]
    fn lll_leaves_identity_alone() {
        let g = GramForm::new(DMatrix::identity(2, 2)).unwrap();
        let red = lll_reduce(&g, DEFAULT_LLL_DELTA).unwrap();
        assert_eq!(red.basis, DMatrix::identity(2, 2));
        assert_eq!(red.first_value(), 1.0);
    }

    #[test]
    fn lll_on_4_1_1_4() {
        let g = GramForm::from_rows(&[vec![4.0, 1.0], vec![1.0, 4.0]]).unwrap();
        let red = lll_reduce(&g, DEFAULT_LLL_DELTA).unwrap();
        // brute force over |coeffs| <= 5: 4a^2 + 2ab + 4b^2 >= 4 with equality at unit vectors
        let mut best = f64::INFINITY;
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                if (a, b) != (0, 0) {
                    best = best.min(g.value(&[a, b]));
                }
            }
        }
        assert_eq!(best, 4.0);
        assert_eq!(red.first_value(), 4.0);
    }

    #[test]
    fn lll_reduces_a_skewed_basis() {
        // identity lattice written in the basis (1,0), (7,1)
        let g = GramForm::from_rows(&[vec![1.0, 7.0], vec![7.0, 50.0]]).unwrap();
        let red = lll_reduce(&g, 0.75).unwrap();
        assert_relative_eq!(red.gram_reduced, DMatrix::identity(2, 2), epsilon = 1e-12);
        assert_eq!(red.determinant().magnitude().to_string(), "1");
    }

    #[test]
    fn rejects_bad_delta() {
        let g = GramForm::new(DMatrix::identity(2, 2)).unwrap();
        assert!(matches!(lll_reduce(&g, 0.2), Err(Error::InvalidParameter(_))));
        assert!(matches!(lll_reduce(&g, 1.0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn shortest_on_identity() {
        let g = GramForm::new(DMatrix::identity(2, 2)).unwrap();
        let s = shortest_vector(&g).unwrap();
        assert_eq!(s.value, 1.0);
        assert_eq!(s.vector.coords(), vec![1, 0]);
        assert_eq!(s.method, Method::Enumeration);
    }

    #[test]
    fn shortest_on_hexagonal() {
        let s = shortest_vector(&hexagonal()).unwrap();
        assert_relative_eq!(s.value, 2.0 / 3f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(s.value, 1.15470054, epsilon = 1e-8);
        assert_eq!(s.vector.coords(), vec![1, 0]);
    }

    #[test]
    fn hexagonal_has_six_minimal_vectors() {
        let (value, vs) = minimal_vectors(&hexagonal()).unwrap();
        assert_relative_eq!(value, 2.0 / 3f64.sqrt(), max_relative = 1e-12);
        assert_eq!(vs, vec![vec![-1, 0], vec![-1, 1], vec![0, -1], vec![0, 1], vec![1, -1], vec![1, 0]]);
    }

    #[test]
    fn brute_force_examples() {
        let id = GramForm::new(DMatrix::identity(2, 2)).unwrap();
        let s = brute_force_shortest(&id, 1).unwrap();
        assert_eq!(s.value, 1.0);
        assert_eq!(s.method, Method::BruteForce);

        let s = brute_force_shortest(&hexagonal(), 3).unwrap();
        assert_relative_eq!(s.value, 2.0 / 3f64.sqrt(), max_relative = 1e-12);
        assert_eq!(s.vector.coords(), shortest_vector(&hexagonal()).unwrap().vector.coords());
    }

    #[test]
    fn brute_force_refuses_small_box() {
        // A_6 root lattice: minimum 2, smallest eigenvalue 2 - 2 cos(pi / 7)
        let n: usize = 6;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 2.0 } else if i.abs_diff(j) == 1 { -1.0 } else { 0.0 }).collect())
            .collect();
        let g = GramForm::from_rows(&rows).unwrap();
        let radius = (2.0 / (2.0 - 2.0 * (std::f64::consts::PI / 7.0).cos())).sqrt();
        assert_eq!(certified_box(&g).unwrap(), radius.floor() as i64);
        assert_eq!(certified_box(&g).unwrap(), 3);
        assert_relative_eq!(brute_force_shortest(&g, 3).unwrap().value, 2.0);
        match brute_force_shortest(&g, 2) {
            Err(Error::BoxTooSmall { required, given }) => assert_eq!((required, given), (3, 2)),
            other => panic!("expected BoxTooSmall, got {other:?}"),
        }
    }

    #[test]
    fn refuses_dimension_above_cap() {
        let g = GramForm::new(DMatrix::identity(22, 22)).unwrap();
        assert!(matches!(shortest_vector(&g), Err(Error::DimensionTooLarge { dim: 22, cap: 20 })));
    }

    #[test]
    fn determinant_of_known_matrices() {
        let m = DMatrix::from_row_slice(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 1]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(integer_determinant(&m), BigInt::zero());
        let m = DMatrix::from_row_slice(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        assert_eq!(integer_determinant(&m), BigInt::from(-1));
    }

    #[test]
    fn period_minimum_examples() {
        let s3 = 3f64.sqrt();
        assert_eq!(min_period_length(&PeriodMatrix::elliptic(0.0, 1.0).unwrap()).unwrap(), 1.0);
        assert_relative_eq!(
            min_period_length(&PeriodMatrix::elliptic(0.5, s3 / 2.0).unwrap()).unwrap(),
            2.0 / s3,
            max_relative = 1e-12
        );
        let tau = crate::period::product(
            &PeriodMatrix::elliptic(0.0, 1.0).unwrap(),
            &PeriodMatrix::elliptic(0.5, s3 / 2.0).unwrap(),
        )
        .unwrap();
        assert_relative_eq!(min_period_length(&tau).unwrap(), 1.0, max_relative = 1e-12);
    }
}
