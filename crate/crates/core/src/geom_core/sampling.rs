//! Uniform sampling on spheres and in balls by Gaussian normalization.

use rand::Rng;
use rand_distr::StandardNormal;

use super::{Ball, PointSet, Vector};
use crate::error::{invalid, Error, Result};

fn gaussian_direction<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        // Reject the (measure-zero, but representable) tiny-norm draws.
        if norm > 1e-150 {
            return g.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// A uniformly distributed point of the unit sphere `S^{n-1}`.
pub fn sample_uniform_sphere<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vector> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    Ok(Vector::from_raw(gaussian_direction(n, rng)))
}

/// A uniformly distributed point of `ball`.
pub fn sample_in_ball<R: Rng + ?Sized>(ball: &Ball, rng: &mut R) -> Vector {
    let n = ball.dim();
    let dir = gaussian_direction(n, rng);
    let u: f64 = rng.random();
    let rho = ball.radius * u.powf(1.0 / n as f64);
    Vector::from_raw(
        dir.iter()
            .zip(ball.center.coords())
            .map(|(d, c)| c + rho * d)
            .collect(),
    )
}

/// `count` i.i.d. uniform points of the ball of `radius` about the origin.
pub fn sample_uniform_ball<R: Rng + ?Sized>(n: usize, radius: f64, count: usize, rng: &mut R) -> Result<PointSet> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(invalid("radius", format!("must be positive, got {radius}")));
    }
    let ball = Ball::centered(n, radius)?;
    let points = (0..count).map(|_| sample_in_ball(&ball, rng)).collect();
    PointSet::new(n, points)
}
