//! Shared geometric substrate: points, balls, caps, sampling, enclosing
//! balls and spherical-cap measures.

mod caps;
mod meb;
mod sampling;
pub(crate) mod special;
mod vector;

pub use caps::{cap_measure_bounds, cap_measure_exact, ln_cap_measure_bounds, ln_cap_measure_exact, CapBounds};
pub use meb::{diameter, min_enclosing_ball, min_enclosing_ball_with, MebOptions, MebSolution};
pub use sampling::{sample_in_ball, sample_uniform_ball, sample_uniform_sphere};
pub use vector::{Ball, PointSet, SphericalCap, Vector};

use crate::error::{Error, Result};

/// Tolerance for geometric predicates (membership, unit-norm checks).
pub const GEOM_TOL: f64 = 1e-12;

/// Default relative tolerance for iterative solvers.
pub const SOLVER_TOL: f64 = 1e-6;

/// Radius of Jung's ball: every set of diameter 1 in dimension `n` lies in
/// a ball of radius `sqrt(n / (2n + 2))`.
pub fn jung_radius(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let n = n as f64;
    Ok((n / (2.0 * n + 2.0)).sqrt())
}

/// `ln Vol(B_n) = (n/2) ln π - ln Γ(n/2 + 1)`.
pub fn ln_unit_ball_volume(n: usize) -> f64 {
    let h = n as f64 / 2.0;
    h * std::f64::consts::PI.ln() - statrs::function::gamma::ln_gamma(h + 1.0)
}

pub fn unit_ball_volume(n: usize) -> f64 {
    ln_unit_ball_volume(n).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn jung_radius_values() {
        assert_eq!(jung_radius(1).unwrap(), 0.5);
        assert!((jung_radius(2).unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((jung_radius(1_000_000).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6);
        assert_eq!(jung_radius(0), Err(Error::ZeroDimension));
    }

    #[test]
    fn jung_radius_increasing() {
        let mut prev = 0.0;
        for n in 1..200 {
            let r = jung_radius(n).unwrap();
            assert!(r > prev);
            assert!(r < std::f64::consts::FRAC_1_SQRT_2);
            prev = r;
        }
    }

    #[test]
    fn ball_volumes() {
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-12);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-12);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-12);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-12);
    }
}
