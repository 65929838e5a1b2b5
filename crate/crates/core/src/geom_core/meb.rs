//! Diameters and minimum enclosing balls.
//!
//! The enclosing-ball solver is a dimension-free core-set iteration on the
//! dual simplex: each step moves the center toward the farthest point (or
//! away from the nearest support point) with exact line search. The dual
//! objective `Φ(u) = Σ uᵢ‖pᵢ - c(u)‖²` lower-bounds the squared optimal
//! radius, so the iteration stops with a certificate once the farthest
//! point is within `(1 + tol)·√Φ`.

use super::{Ball, PointSet, Vector};
use crate::error::{invalid, Error, Result};

const MIN_ITERATIONS: usize = 1_000;
const MAX_ITERATIONS: usize = 1_000_000;

/// Largest pairwise distance, by exhaustive scan.
pub fn diameter(ps: &PointSet) -> Result<f64> {
    if ps.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let pts = ps.points();
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            best = best.max(pts[i].dist_sq(&pts[j]));
        }
    }
    Ok(best.sqrt())
}

#[derive(Clone, Copy, Debug)]
pub struct MebOptions {
    /// Relative radius tolerance: the result is within `1 + tol` of optimal.
    pub tol: f64,
    pub max_iterations: usize,
}

impl MebOptions {
    pub fn new(tol: f64) -> Self {
        let cap = (1.0 / (tol * tol)).ceil();
        let max_iterations = if cap.is_finite() && cap < MAX_ITERATIONS as f64 {
            (cap as usize).max(MIN_ITERATIONS)
        } else {
            MAX_ITERATIONS
        };
        Self { tol, max_iterations }
    }
}

#[derive(Clone, Debug)]
pub struct MebSolution {
    pub ball: Ball,
    /// Certified lower bound on the optimal radius.
    pub dual_radius: f64,
    pub iterations: usize,
    /// Indices carrying positive dual weight.
    pub support: Vec<usize>,
}

pub fn min_enclosing_ball(ps: &PointSet, tol: f64) -> Result<Ball> {
    min_enclosing_ball_with(ps, MebOptions::new(tol)).map(|s| s.ball)
}

pub fn min_enclosing_ball_with(ps: &PointSet, opts: MebOptions) -> Result<MebSolution> {
    if ps.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(invalid("tol", format!("must be positive, got {}", opts.tol)));
    }
    let n = ps.dim();
    let origin = &ps.points()[0];
    // Work relative to the first point to limit cancellation.
    let q: Vec<Vec<f64>> = ps
        .iter()
        .map(|p| p.coords().iter().zip(origin.coords()).map(|(a, b)| a - b).collect())
        .collect();
    let m = q.len();

    let dist_sq = |c: &[f64], p: &[f64]| -> f64 { c.iter().zip(p).map(|(a, b)| (a - b) * (a - b)).sum() };

    let a = argmax(m, |i| dist_sq(&q[0], &q[i]));
    let b = argmax(m, |i| dist_sq(&q[a], &q[i]));
    if dist_sq(&q[a], &q[b]) == 0.0 {
        return Ok(MebSolution {
            ball: Ball::new(origin.clone(), 0.0)?,
            dual_radius: 0.0,
            iterations: 0,
            support: vec![0],
        });
    }

    let mut u = vec![0.0; m];
    u[a] = 0.5;
    u[b] = 0.5;
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; m];
    let target = (1.0 + opts.tol) * (1.0 + opts.tol);

    for iter in 0..opts.max_iterations {
        c.iter_mut().for_each(|x| *x = 0.0);
        for (ui, qi) in u.iter().zip(&q) {
            if *ui > 0.0 {
                for (cx, qx) in c.iter_mut().zip(qi) {
                    *cx += ui * qx;
                }
            }
        }
        for (di, qi) in d.iter_mut().zip(&q) {
            *di = dist_sq(&c, qi);
        }
        let phi: f64 = u.iter().zip(&d).map(|(ui, di)| ui * di).sum();
        let j = argmax(m, |i| d[i]);
        if d[j] <= target * phi {
            return finish(origin, &c, &d, &u, phi, iter);
        }
        let kappa = (0..m)
            .filter(|&i| u[i] > 0.0)
            .min_by(|&x, &y| d[x].total_cmp(&d[y]))
            .expect("support is never empty");
        let eps_plus = d[j] / phi - 1.0;
        let eps_minus = 1.0 - d[kappa] / phi;

        if eps_plus >= eps_minus {
            let lambda = eps_plus / (2.0 * (1.0 + eps_plus));
            u.iter_mut().for_each(|x| *x *= 1.0 - lambda);
            u[j] += lambda;
        } else {
            let uk = u[kappa];
            let lambda = (eps_minus / (2.0 * (1.0 - eps_minus))).min(uk / (1.0 - uk));
            u.iter_mut().for_each(|x| *x *= 1.0 + lambda);
            u[kappa] -= lambda;
            if u[kappa] < 1e-15 {
                u[kappa] = 0.0;
            }
        }
    }
    Err(Error::NonConvergence {
        what: "minimum enclosing ball",
        iterations: opts.max_iterations,
    })
}

fn finish(origin: &Vector, c: &[f64], d: &[f64], u: &[f64], phi: f64, iterations: usize) -> Result<MebSolution> {
    let radius = d.iter().cloned().fold(0.0, f64::max).sqrt();
    let center = Vector::from_raw(c.iter().zip(origin.coords()).map(|(a, b)| a + b).collect());
    Ok(MebSolution {
        ball: Ball::new(center, radius)?,
        dual_radius: phi.sqrt(),
        iterations,
        support: (0..u.len()).filter(|&i| u[i] > 0.0).collect(),
    })
}

fn argmax(m: usize, f: impl Fn(usize) -> f64) -> usize {
    (0..m).max_by(|&x, &y| f(x).total_cmp(&f(y))).expect("non-empty")
}
