//! Rigid motions and finite discretizations of the isometry group.
//!
//! Distances between isometries `f(x) = Ax + v` and `g(x) = Bx + w` use the
//! surrogate `‖A - B‖_op + ‖v - w‖`, which dominates the sup-distance over
//! the unit ball.

mod family;
mod nets;

pub use family::{audit_cover_family, build_cover_family, ln_cover_family_bound, CoverAuditReport, CoverFailure};
pub use nets::{
    build_orthogonal_net, build_orthogonal_net_with, build_translation_cover, ln_szarek_bound, IsometryNet,
    NetCertificate, NetOptions,
};

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geom_core::Vector;

/// Maximum entrywise deviation `|AᵀA - I|` accepted as orthogonal.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;
const DET_TOL: f64 = 1e-8;
const SVD_MAX_DIM: usize = 8;
const POWER_TOL: f64 = 1e-9;
const POWER_MAX_ITER: usize = 10_000;

/// `x ↦ matrix·x + translation` with an orthogonal matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawIsometry", into = "RawIsometry")]
pub struct Isometry {
    matrix: DMatrix<f64>,
    translation: Vector,
}

#[derive(Serialize, Deserialize)]
struct RawIsometry {
    matrix: Vec<Vec<f64>>,
    translation: Vector,
}

impl TryFrom<RawIsometry> for Isometry {
    type Error = Error;

    fn try_from(raw: RawIsometry) -> Result<Self> {
        Isometry::from_rows(&raw.matrix, raw.translation)
    }
}

impl From<Isometry> for RawIsometry {
    fn from(iso: Isometry) -> Self {
        let n = iso.dim();
        RawIsometry {
            matrix: (0..n).map(|i| (0..n).map(|j| iso.matrix[(i, j)]).collect()).collect(),
            translation: iso.translation,
        }
    }
}

/// Largest entry of `|AᵀA - I|`.
pub fn orthogonality_defect(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let g = a.transpose() * a;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - target).abs());
        }
    }
    worst
}

fn check_orthogonal(a: &DMatrix<f64>) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(invalid("matrix", "must be square"));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(invalid("matrix", "entries must be finite"));
    }
    let deviation = orthogonality_defect(a);
    if deviation > ORTHOGONALITY_TOL {
        return Err(Error::NotOrthogonal { deviation });
    }
    let det = a.determinant();
    if (det.abs() - 1.0).abs() > DET_TOL {
        return Err(Error::NotOrthogonal {
            deviation: (det.abs() - 1.0).abs(),
        });
    }
    Ok(())
}

impl Isometry {
    pub fn new(matrix: DMatrix<f64>, translation: Vector) -> Result<Self> {
        if matrix.nrows() != translation.dim() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                got: translation.dim(),
            });
        }
        check_orthogonal(&matrix)?;
        Ok(Self { matrix, translation })
    }

    pub fn from_rows(rows: &[Vec<f64>], translation: Vector) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(invalid("matrix", "must be square"));
        }
        let matrix = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        Self::new(matrix, translation)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: DMatrix::identity(n, n),
            translation: Vector::zeros(n),
        }
    }

    pub fn translation_by(v: Vector) -> Self {
        let n = v.dim();
        Self {
            matrix: DMatrix::identity(n, n),
            translation: v,
        }
    }

    pub fn linear(matrix: DMatrix<f64>) -> Result<Self> {
        let n = matrix.nrows();
        Self::new(matrix, Vector::zeros(n))
    }

    /// Planar rotation by `theta` (counter-clockwise).
    pub fn rotation_2d(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            matrix: DMatrix::from_row_slice(2, 2, &[c, -s, s, c]),
            translation: Vector::zeros(2),
        }
    }

    /// Skips validation; used for products of already-validated factors.
    pub(crate) fn from_parts(matrix: DMatrix<f64>, translation: Vector) -> Self {
        Self { matrix, translation }
    }

    pub fn dim(&self) -> usize {
        self.translation.dim()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn translation(&self) -> &Vector {
        &self.translation
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.determinant()
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        let n = self.dim();
        let mut out = self.translation.coords().to_vec();
        for (i, o) in out.iter_mut().enumerate() {
            *o += (0..n).map(|j| self.matrix[(i, j)] * x[j]).sum::<f64>();
        }
        Vector::from_raw(out)
    }

    /// `g⁻¹(x) = Aᵀ(x - v)`.
    pub fn apply_inverse(&self, x: &Vector) -> Vector {
        let n = self.dim();
        let mut out = vec![0.0; n];
        for j in 0..n {
            let d = x[j] - self.translation[j];
            for (i, o) in out.iter_mut().enumerate() {
                *o += self.matrix[(j, i)] * d;
            }
        }
        Vector::from_raw(out)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Isometry) -> Isometry {
        let matrix = &self.matrix * &inner.matrix;
        let translation = self.apply(&inner.translation);
        Self::from_parts(matrix, translation)
    }

    pub fn inverse(&self) -> Isometry {
        let matrix = self.matrix.transpose();
        let n = self.dim();
        let neg = Isometry::from_parts(matrix.clone(), Vector::zeros(n)).apply(&self.translation);
        Self::from_parts(matrix, neg.scale(-1.0))
    }
}

/// Spectral norm. Full SVD up to dimension 8, power iteration above.
pub fn op_norm(m: &DMatrix<f64>) -> f64 {
    if m.nrows().max(m.ncols()) <= SVD_MAX_DIM {
        return m.singular_values().max();
    }
    power_iteration_norm(m)
}

fn power_iteration_norm(m: &DMatrix<f64>) -> f64 {
    let gram = m.transpose() * m;
    let k = gram.nrows();
    let mut x = nalgebra::DVector::from_fn(k, |i, _| 1.0 / (i as f64 + 1.0));
    x /= x.norm();
    let mut lambda = 0.0;
    for _ in 0..POWER_MAX_ITER {
        let y = &gram * &x;
        let next = y.norm();
        if next == 0.0 {
            return 0.0;
        }
        x = y / next;
        if (next - lambda).abs() <= POWER_TOL * next {
            lambda = next;
            break;
        }
        lambda = next;
    }
    lambda.sqrt()
}

/// `‖A - B‖_op` for orthogonal `A`, `B`.
pub fn op_norm_distance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: b.nrows(),
        });
    }
    check_orthogonal(a)?;
    check_orthogonal(b)?;
    Ok(op_norm(&(a - b)))
}

/// `‖A - B‖_op = ‖I - AᵀB‖_op` for orthogonal inputs, with closed forms in
/// dimensions up to 3 (eigenvalues of a rotation are `e^{±iω}` and `1`).
pub(crate) fn orthogonal_gap(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    match n {
        1 => (a[(0, 0)] - b[(0, 0)]).abs(),
        2 | 3 => {
            let q = a.transpose() * b;
            if q.determinant() < 0.0 {
                return 2.0;
            }
            let tr = q.trace();
            let base = if n == 2 { 2.0 } else { 3.0 };
            (base - tr).max(0.0).sqrt().min(2.0)
        }
        _ => op_norm(&(a - b)),
    }
}

/// Squared Frobenius distance; an upper bound for the squared operator gap.
pub(crate) fn frobenius_sq(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Conservative isometry distance `‖A - B‖_op + ‖v - w‖`.
pub fn iso_distance_surrogate(f: &Isometry, g: &Isometry) -> Result<f64> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: g.dim(),
        });
    }
    Ok(orthogonal_gap(&f.matrix, &g.matrix) + f.translation.dist(&g.translation))
}

/// Haar-distributed element of `O(n)`: QR of a Gaussian matrix with the
/// signs of `R`'s diagonal folded into `Q`. Both determinant classes occur
/// with probability ½.
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

/// Haar-distributed element of `SO(n)`.
pub fn random_rotation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let mut q = random_orthogonal(n, rng);
    if q.determinant() < 0.0 {
        for i in 0..n {
            q[(i, 0)] = -q[(i, 0)];
        }
    }
    q
}
