//! Cones `K(a, ξ, α, ℓ) = {x : ‖x - a‖ cos α ≤ (x - a)·ξ ≤ ℓ}` and the sweep
//! inclusion `a + εB_n ⊂ T(ρ, c₁ε, c₁ε + c₂, K)` for `ρ ∈ C(ξ, α/2)`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::geom_core::{sample_in_ball, sample_uniform_sphere, Ball, Vector, GEOM_TOL};
use crate::RngStream;

const T_GRID: usize = 17;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeConstants {
    pub eps0: f64,
    pub c1: f64,
    pub c2: f64,
}

fn check_cone_params(alpha: f64, l: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < FRAC_PI_2) {
        return Err(invalid("alpha", format!("must lie in (0, π/2), got {alpha}")));
    }
    if !(l > 0.0 && l.is_finite()) {
        return Err(invalid("l", format!("must be positive, got {l}")));
    }
    Ok(())
}

/// `ε₀ = (ℓ/3) tan(α/2) cos α`, `c₁ = 1/sin(α/2)`, `c₂ = ℓ/3`.
pub fn cone_constants(alpha: f64, l: f64) -> Result<ConeConstants> {
    check_cone_params(alpha, l)?;
    Ok(ConeConstants {
        eps0: l / 3.0 * (alpha / 2.0).tan() * alpha.cos(),
        c1: 1.0 / (alpha / 2.0).sin(),
        c2: l / 3.0,
    })
}

/// Largest `ε` for which the inclusion holds with the constants of
/// [`cone_constants`].
///
/// Writing `x = a + u` with `‖u‖ ≤ ε` and `t ≥ c₁ε`, the angle between
/// `tρ + u` and `ρ` is at most `asin(‖u‖/t) ≤ α/2`, so the lateral condition
/// holds for every `ε`. The height condition `u·ξ + tρ·ξ ≤ ℓ` is tight at
/// `u = εξ`, `ρ = ξ`, `t = c₁ε + c₂`, which gives `ε ≤ 2ℓ / (3(1 + c₁))`.
pub fn cone_inclusion_breakpoint(alpha: f64, l: f64) -> Result<f64> {
    let c = cone_constants(alpha, l)?;
    Ok(2.0 * l / (3.0 * (1.0 + c.c1)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub apex: Vector,
    pub axis: Vector,
    pub alpha: f64,
    pub height: f64,
}

impl ConeSpec {
    pub fn new(apex: Vector, axis: Vector, alpha: f64, height: f64) -> Result<Self> {
        check_cone_params(alpha, height)?;
        axis.check_dim(apex.dim())?;
        if (axis.norm() - 1.0).abs() > 1e-12 {
            return Err(invalid("axis", "must be a unit vector"));
        }
        Ok(Self {
            apex,
            axis,
            alpha,
            height,
        })
    }

    pub fn dim(&self) -> usize {
        self.apex.dim()
    }

    pub fn contains(&self, x: &Vector) -> bool {
        let d = x - &self.apex;
        let h = d.dot(&self.axis);
        d.norm() * self.alpha.cos() <= h + GEOM_TOL && h <= self.height + GEOM_TOL
    }

    pub fn constants(&self) -> ConeConstants {
        cone_constants(self.alpha, self.height).expect("validated on construction")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeReport {
    pub eps: f64,
    pub eps0: f64,
    pub probes: usize,
    /// Number of probes with some `t` on the grid leaving the cone.
    pub violations: usize,
    pub t_grid: usize,
}

/// [`probe_cone_inclusion`] restricted to `0 < ε < ε₀` and `n ∈ {2, 3}`.
pub fn verify_cone_inclusion(cone: &ConeSpec, eps: f64, probes: usize, rng: &mut RngStream) -> Result<ConeReport> {
    let n = cone.dim();
    if !(2..=3).contains(&n) {
        return Err(invalid("n", format!("must be 2 or 3, got {n}")));
    }
    let eps0 = cone.constants().eps0;
    if !(eps > 0.0 && eps < eps0) {
        return Err(invalid("eps", format!("must lie in (0, {eps0}), got {eps}")));
    }
    probe_cone_inclusion(cone, eps, probes, rng)
}

/// Samples `ρ ∈ C(ξ, α/2)` and `x ∈ a + εB_n` (half of each on the boundary
/// of its range) and tests `x + tρ ∈ K` on a grid of `t ∈ [c₁ε, c₁ε + c₂]`.
/// Accepts any `ε > 0`, for probing beyond `ε₀`.
pub fn probe_cone_inclusion(cone: &ConeSpec, eps: f64, probes: usize, rng: &mut RngStream) -> Result<ConeReport> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(invalid("eps", format!("must be positive, got {eps}")));
    }
    let n = cone.dim();
    let c = cone.constants();
    let half = cone.alpha / 2.0;
    let ball = Ball::new(cone.apex.clone(), eps)?;
    let mut violations = 0;
    for i in 0..probes {
        let rho = sample_direction_in_cap(&cone.axis, half, i % 2 == 0, rng)?;
        let x = if i % 4 < 2 {
            cone.apex.add_scaled(eps, &sample_uniform_sphere(n, rng)?)
        } else {
            sample_in_ball(&ball, rng)
        };
        let bad = (0..T_GRID).any(|j| {
            let t = c.c1 * eps + c.c2 * j as f64 / (T_GRID - 1) as f64;
            !cone.contains(&x.add_scaled(t, &rho))
        });
        if bad {
            violations += 1;
        }
    }
    Ok(ConeReport {
        eps,
        eps0: c.eps0,
        probes,
        violations,
        t_grid: T_GRID,
    })
}

/// Uniform direction in `C(axis, angle)`, or on its boundary circle.
fn sample_direction_in_cap(axis: &Vector, angle: f64, boundary: bool, rng: &mut RngStream) -> Result<Vector> {
    let n = axis.dim();
    let g = sample_uniform_sphere(n, rng)?;
    let lateral = g.add_scaled(-g.dot(axis), axis);
    let ln = lateral.norm();
    if ln < 1e-12 {
        return Ok(axis.clone());
    }
    let w = lateral.scale(1.0 / ln);
    let theta = if boundary {
        angle
    } else {
        // Rejection on the polar angle against the sinⁿ⁻² density.
        loop {
            let th: f64 = angle * rand::Rng::random::<f64>(rng);
            let accept: f64 = rand::Rng::random(rng);
            if accept * angle.sin().powi(n as i32 - 2) <= th.sin().powi(n as i32 - 2) {
                break th;
            }
        }
    };
    Ok(axis.scale(theta.cos()).add_scaled(theta.sin(), &w))
}
