//! The far-pair graph on a ball and its edge-measure audit.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::{Membership, MeasurableGraphSpec};
use crate::bodies::Body;
use crate::error::{invalid, Error, Result};
use crate::geom_core::{cap_measure_exact, sample_in_ball, sample_uniform_sphere, Ball, Vector};
use crate::RngStream;

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < FRAC_PI_2) {
        return Err(invalid("alpha", format!("must lie in (0, π/2), got {alpha}")));
    }
    Ok(())
}

/// Points uniform on `rB_n`, joined when `‖x - y‖ ≥ 2r cos(α/2)`, with
/// family membership through [`Body::contains`].
///
/// With `unit_diameter` the threshold must not exceed 1, so a coclique has
/// diameter below 1.
pub fn geometric_spec(
    n: usize,
    r: f64,
    alpha: f64,
    family: Vec<Body>,
    unit_diameter: bool,
) -> Result<MeasurableGraphSpec<Vector>> {
    check_alpha(alpha)?;
    let ball = Ball::centered(n, r)?;
    if r <= 0.0 {
        return Err(invalid("r", "must be positive"));
    }
    let mut threshold = 2.0 * r * (alpha / 2.0).cos();
    if unit_diameter {
        if threshold > 1.0 + 1e-12 {
            return Err(invalid("alpha", format!("threshold {threshold} exceeds 1")));
        }
        threshold = threshold.min(1.0);
    }
    for b in &family {
        if b.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.dim(),
            });
        }
    }
    let labels = (0..family.len()).map(|i| format!("Y{i}")).collect();
    let family = family
        .into_iter()
        .map(|b| -> Membership<Vector> { Box::new(move |x: &Vector| b.contains(x).unwrap_or(false)) })
        .collect();
    Ok(MeasurableGraphSpec {
        sampler: Box::new(move |rng: &mut RngStream| sample_in_ball(&ball, rng)),
        edge: Box::new(move |x: &Vector, y: &Vector| x.dist(y) >= threshold),
        family,
        labels,
    })
}

/// `2r cos(α/2)`.
pub fn edge_threshold(r: f64, alpha: f64) -> f64 {
    2.0 * r * (alpha / 2.0).cos()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnchorAudit {
    pub anchor_norm: f64,
    pub far_fraction: f64,
    /// `m(α) + 3σ` with `σ = √(m(1 - m)/N)`.
    pub allowed: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeAuditReport {
    pub n: usize,
    pub alpha: f64,
    pub threshold: f64,
    pub cap_measure: f64,
    pub samples_per_anchor: usize,
    pub anchors: Vec<AnchorAudit>,
    /// Far points `y` of an anchor `x` with `y·(-x/‖x‖) < cos α`.
    pub cone_violations: usize,
    pub pass: bool,
}

/// Monte Carlo check that for `x ∈ B_n` the set of `y ∈ B_n` with
/// `‖x - y‖ ≥ 2cos(α/2)` has relative volume at most `m(α)`, and that all
/// such `y` lie in the cone of half-angle `α` about `-x`.
///
/// Anchors are the origin, a point at norm `1 - 10⁻⁹`, and `anchors - 2`
/// uniform points of the ball.
pub fn edge_measure_audit(
    n: usize,
    alpha: f64,
    anchors: usize,
    samples_per_anchor: usize,
    rng: &mut RngStream,
) -> Result<EdgeAuditReport> {
    check_alpha(alpha)?;
    if samples_per_anchor == 0 {
        return Err(invalid("samples_per_anchor", "must be positive"));
    }
    let unit = Ball::centered(n, 1.0)?;
    let m = cap_measure_exact(n, alpha)?;
    let threshold = edge_threshold(1.0, alpha);
    let allowed = m + 3.0 * (m * (1.0 - m) / samples_per_anchor as f64).sqrt();
    let cos_a = alpha.cos();
    let mut points = vec![Vector::zeros(n), sample_uniform_sphere(n, rng)?.scale(1.0 - 1e-9)];
    while points.len() < anchors.max(2) {
        points.push(sample_in_ball(&unit, rng));
    }
    let mut rows = Vec::with_capacity(points.len());
    let mut cone_violations = 0;
    for x in &points {
        let norm = x.norm();
        let mut far = 0usize;
        for _ in 0..samples_per_anchor {
            let y = sample_in_ball(&unit, rng);
            if x.dist(&y) >= threshold {
                far += 1;
                if norm == 0.0 || -y.dot(x) / norm < cos_a - 1e-12 {
                    cone_violations += 1;
                }
            }
        }
        let frac = far as f64 / samples_per_anchor as f64;
        rows.push(AnchorAudit {
            anchor_norm: norm,
            far_fraction: frac,
            allowed,
            pass: frac <= allowed,
        });
    }
    let pass = cone_violations == 0 && rows.iter().all(|r| r.pass);
    Ok(EdgeAuditReport {
        n,
        alpha,
        threshold,
        cap_measure: m,
        samples_per_anchor,
        anchors: rows,
        cone_violations,
        pass,
    })
}
