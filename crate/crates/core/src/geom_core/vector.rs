use std::ops::{Add, Index, Mul, Sub};

use serde::{Deserialize, Serialize};

use super::GEOM_TOL;
use crate::error::{invalid, Error, Result};

/// A point of Euclidean `n`-space with finite coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(invalid("coords", "all coordinates must be finite"));
        }
        Ok(Self(coords))
    }

    /// Wraps coordinates produced by arithmetic on valid vectors.
    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty());
        Self(coords)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    /// The `i`-th standard basis vector of dimension `n`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist_sq(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    pub fn dist(&self, other: &Vector) -> f64 {
        self.dist_sq(other).sqrt()
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|c| c * s).collect())
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: f64, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + s * b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.dim(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Vector::new(v)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        self.add_scaled(1.0, rhs)
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        self.add_scaled(-1.0, rhs)
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;

    fn mul(self, s: f64) -> Vector {
        self.scale(s)
    }
}

/// Finite configuration of points sharing one dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPointSet")]
pub struct PointSet {
    dim: usize,
    points: Vec<Vector>,
}

#[derive(Deserialize)]
struct RawPointSet {
    dim: usize,
    points: Vec<Vector>,
}

impl TryFrom<RawPointSet> for PointSet {
    type Error = Error;

    fn try_from(raw: RawPointSet) -> Result<Self> {
        PointSet::new(raw.dim, raw.points)
    }
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Vector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for p in &points {
            p.check_dim(dim)?;
        }
        Ok(Self { dim, points })
    }

    pub fn empty(dim: usize) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Vector> {
        self.points
    }

    pub fn push(&mut self, p: Vector) -> Result<()> {
        p.check_dim(self.dim)?;
        self.points.push(p);
        Ok(())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vector> {
        self.points.iter()
    }

    /// Uniformly rescales every point about the origin.
    pub fn scaled(&self, s: f64) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p.scale(s)).collect(),
        }
    }
}

/// Closed Euclidean ball.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBall")]
pub struct Ball {
    pub center: Vector,
    pub radius: f64,
}

#[derive(Deserialize)]
struct RawBall {
    center: Vector,
    radius: f64,
}

impl TryFrom<RawBall> for Ball {
    type Error = Error;

    fn try_from(raw: RawBall) -> Result<Self> {
        Ball::new(raw.center, raw.radius)
    }
}

impl Ball {
    pub fn new(center: Vector, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(invalid("radius", format!("must be finite and >= 0, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    /// Ball of the given radius about the origin of `R^n`.
    pub fn centered(n: usize, radius: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Self::new(Vector::zeros(n), radius)
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn contains(&self, p: &Vector) -> bool {
        self.center.dist(p) <= self.radius + GEOM_TOL
    }

    pub fn inflated(&self, eps: f64) -> Ball {
        Ball {
            center: self.center.clone(),
            radius: self.radius + eps,
        }
    }

    pub fn ln_volume(&self) -> f64 {
        super::ln_unit_ball_volume(self.dim()) + self.dim() as f64 * self.radius.ln()
    }

    pub fn volume(&self) -> f64 {
        self.ln_volume().exp()
    }
}

/// Cap `{y ∈ S^{n-1} : y·axis ≥ cos(angle)}` of the unit sphere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalCap {
    axis: Vector,
    angle: f64,
}

impl SphericalCap {
    pub fn new(axis: Vector, angle: f64) -> Result<Self> {
        if (axis.norm() - 1.0).abs() > GEOM_TOL {
            return Err(invalid("axis", "must be a unit vector"));
        }
        if !(angle > 0.0 && angle < std::f64::consts::PI) {
            return Err(invalid("angle", format!("must lie in (0, π), got {angle}")));
        }
        Ok(Self { axis, angle })
    }

    pub fn axis(&self) -> &Vector {
        &self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Membership for a unit vector `y`.
    pub fn contains(&self, y: &Vector) -> bool {
        y.dot(&self.axis) >= self.angle.cos() - GEOM_TOL
    }

    pub fn measure(&self) -> Result<f64> {
        super::cap_measure_exact(self.axis.dim(), self.angle)
    }
}
