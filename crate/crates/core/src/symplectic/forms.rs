use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use super::profile::RadialProfile;
use crate::error::{Error, Result};

/// Real coordinates are ordered `(x_1, y_1, ..., x_n, y_n)` with `z_j = x_j + i y_j`.
pub fn to_real(z: &[Complex<f64>]) -> Vec<f64> {
    z.iter().flat_map(|c| [c.re, c.im]).collect()
}

pub fn to_complex(x: &[f64]) -> Vec<Complex<f64>> {
    x.chunks_exact(2).map(|p| Complex::new(p[0], p[1])).collect()
}

pub fn norm(z: &[Complex<f64>]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// A real 2-form at a point, stored as the antisymmetric matrix
/// `M[a][b] = omega(e_a, e_b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoForm {
    pub base: Vec<f64>,
    pub matrix: DMatrix<f64>,
}

impl TwoForm {
    pub fn eval(&self, u: &[f64], v: &[f64]) -> f64 {
        let n = self.matrix.nrows();
        let mut acc = 0.0;
        for a in 0..n {
            for b in 0..n {
                acc += u[a] * self.matrix[(a, b)] * v[b];
            }
        }
        acc
    }

    pub fn antisymmetry_defect(&self) -> f64 {
        (&self.matrix + self.matrix.transpose()).amax()
    }

    pub fn max_abs_diff(&self, other: &DMatrix<f64>) -> f64 {
        (&self.matrix - other).amax()
    }

    /// Largest violation of `omega(Ju, Jv) = omega(u, v)`.
    pub fn type_11_defect(&self) -> f64 {
        let j = complex_structure(self.matrix.nrows() / 2);
        (j.transpose() * &self.matrix * &j - &self.matrix).amax()
    }

    /// The Hermitian matrix `h` with `omega(u, Ju) = Re(u^* h u)`, read off a
    /// J-invariant form.
    pub fn hermitian(&self) -> DMatrix<Complex<f64>> {
        let n = self.matrix.nrows() / 2;
        let m = &self.matrix;
        DMatrix::from_fn(n, n, |j, k| Complex::new(m[(2 * j, 2 * k + 1)], -m[(2 * j, 2 * k)]))
    }

    pub fn min_hermitian_eigenvalue(&self) -> f64 {
        self.hermitian().symmetric_eigen().eigenvalues.min()
    }
}

/// Matrix of `omega_std = sum dx_j ^ dy_j`.
pub fn omega_std(n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        m[(2 * j, 2 * j + 1)] = 1.0;
        m[(2 * j + 1, 2 * j)] = -1.0;
    }
    m
}

/// Multiplication by `i` in real coordinates.
pub fn complex_structure(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        j[(2 * k + 1, 2 * k)] = 1.0;
        j[(2 * k, 2 * k + 1)] = -1.0;
    }
    j
}

/// Real matrix of `(i/2) sum h_jk dz_j ^ dzbar_k`.
pub fn hermitian_to_two_form(h: &DMatrix<Complex<f64>>) -> DMatrix<f64> {
    let n = h.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        for k in 0..n {
            let c = h[(j, k)];
            m[(2 * j, 2 * k)] = -c.im;
            m[(2 * j, 2 * k + 1)] = c.re;
            m[(2 * j + 1, 2 * k)] = -c.re;
            m[(2 * j + 1, 2 * k + 1)] = -c.im;
        }
    }
    m
}

/// `F(z) = phi(|z|) / |z| * z`.
pub fn map_f<P: RadialProfile + ?Sized>(z: &[Complex<f64>], p: &P) -> Result<Vec<Complex<f64>>> {
    let r = norm(z);
    if r == 0.0 {
        return Err(Error::ZeroInput);
    }
    if p.is_identity_at(r) {
        return Ok(z.to_vec());
    }
    let s = p.value(r) / r;
    Ok(z.iter().map(|c| c * s).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PullbackMode {
    Analytic,
    FiniteDifference,
}

pub fn default_fd_step(z_norm: f64) -> f64 {
    1e-6 * z_norm.max(1.0)
}

/// `DF = phi'(r) P + (phi(r)/r)(I - P)` with `P` the projector onto the real
/// radial direction.
pub fn analytic_jacobian<P: RadialProfile + ?Sized>(x: &[f64], p: &P) -> Result<DMatrix<f64>> {
    let dim = x.len();
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r == 0.0 {
        return Err(Error::ZeroInput);
    }
    if p.is_identity_at(r) {
        return Ok(DMatrix::identity(dim, dim));
    }
    let radial = p.slope(r);
    let tangential = p.value(r) / r;
    let r2 = r * r;
    Ok(DMatrix::from_fn(dim, dim, |a, b| {
        let proj = x[a] * x[b] / r2;
        let id = if a == b { 1.0 } else { 0.0 };
        tangential * id + (radial - tangential) * proj
    }))
}

/// Central differences of `F` with step `h`.
pub fn fd_jacobian<P: RadialProfile + ?Sized>(x: &[f64], p: &P, h: f64) -> Result<DMatrix<f64>> {
    let dim = x.len();
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r == 0.0 {
        return Err(Error::ZeroInput);
    }
    if !(h > 0.0) || r + h == r || h < 1e-13 * r {
        return Err(Error::StepTooSmall { step: h, norm: r });
    }
    let mut jac = DMatrix::zeros(dim, dim);
    let mut xp = x.to_vec();
    for b in 0..dim {
        xp[b] = x[b] + h;
        let fp = to_real(&map_f(&to_complex(&xp), p)?);
        xp[b] = x[b] - h;
        let fm = to_real(&map_f(&to_complex(&xp), p)?);
        xp[b] = x[b];
        for a in 0..dim {
            jac[(a, b)] = (fp[a] - fm[a]) / (2.0 * h);
        }
    }
    Ok(jac)
}

/// `omega(DF e_a, DF e_b)` assembled over `a < b` and filled antisymmetrically.
fn pullback_of_std(jac: &DMatrix<f64>) -> DMatrix<f64> {
    let dim = jac.nrows();
    let mut m = DMatrix::zeros(dim, dim);
    for a in 0..dim {
        for b in a + 1..dim {
            let mut w = 0.0;
            for j in 0..dim / 2 {
                let (x, y) = (2 * j, 2 * j + 1);
                w += jac[(x, a)] * jac[(y, b)] - jac[(y, a)] * jac[(x, b)];
            }
            m[(a, b)] = w;
            m[(b, a)] = -w;
        }
    }
    m
}

/// `(F^* omega_std)_z`.
pub fn pullback_two_form<P: RadialProfile + ?Sized>(
    z: &[Complex<f64>],
    p: &P,
    mode: PullbackMode,
) -> Result<TwoForm> {
    match mode {
        PullbackMode::Analytic => {
            let x = to_real(z);
            let jac = analytic_jacobian(&x, p)?;
            Ok(TwoForm { matrix: pullback_of_std(&jac), base: x })
        }
        PullbackMode::FiniteDifference => pullback_two_form_fd(z, p, default_fd_step(norm(z))),
    }
}

pub fn pullback_two_form_fd<P: RadialProfile + ?Sized>(z: &[Complex<f64>], p: &P, h: f64) -> Result<TwoForm> {
    let x = to_real(z);
    let jac = fd_jacobian(&x, p, h)?;
    Ok(TwoForm { matrix: pullback_of_std(&jac), base: x })
}

/// `(i/2) d d-bar log |z|^2`, the pull-back of the Fubini-Study form under
/// `C^n - 0 -> P^{n-1}`, normalized so a line has area `pi`.
pub fn fs_pullback_form(z: &[Complex<f64>]) -> Result<TwoForm> {
    let n = z.len();
    let r2: f64 = z.iter().map(|c| c.norm_sqr()).sum();
    if r2 == 0.0 {
        return Err(Error::ZeroInput);
    }
    let r4 = r2 * r2;
    let h = DMatrix::from_fn(n, n, |j, k| {
        let id = if j == k { r2 } else { 0.0 };
        (Complex::new(id, 0.0) - z[j].conj() * z[k]) / r4
    });
    Ok(TwoForm { base: to_real(z), matrix: hermitian_to_two_form(&h) })
}

/// `omega_std + lambda^2 q^* sigma`, the form expected on the inner region.
pub fn inner_target(z: &[Complex<f64>], lambda: f64) -> Result<TwoForm> {
    let fs = fs_pullback_form(z)?;
    Ok(TwoForm { matrix: omega_std(z.len()) + fs.matrix * (lambda * lambda), base: fs.base })
}

/// Largest component of `d omega` at `x`, with derivatives of the coefficient
/// matrix taken by the five-point stencil of step `h`:
/// `(d omega)_{abc} = d_a omega_bc + d_b omega_ca + d_c omega_ab`.
pub fn closedness_defect<F>(form: F, x: &[f64], h: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<DMatrix<f64>>,
{
    let dim = x.len();
    let mut derivs = Vec::with_capacity(dim);
    let mut xp = x.to_vec();
    for a in 0..dim {
        let mut eval = |t: f64| {
            xp[a] = x[a] + t;
            let m = form(&xp);
            xp[a] = x[a];
            m
        };
        let d = (eval(-2.0 * h)? - eval(-h)? * 8.0 + eval(h)? * 8.0 - eval(2.0 * h)?) / (12.0 * h);
        derivs.push(d);
    }
    let mut worst: f64 = 0.0;
    for a in 0..dim {
        for b in a + 1..dim {
            for c in b + 1..dim {
                let v = derivs[a][(b, c)] + derivs[b][(c, a)] + derivs[c][(a, b)];
                worst = worst.max(v.abs());
            }
        }
    }
    Ok(worst)
}
