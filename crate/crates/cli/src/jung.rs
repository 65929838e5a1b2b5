//! `jung-check`: enclosing radii of diameter-1 sets never exceed `r_n`.

use covercert_core::geom_core::{diameter, jung_radius, min_enclosing_ball, PointSet, Vector};
use covercert_core::RngStream;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::args::JungArgs;
use crate::output::canonical_json;
use crate::{CliError, CliResult, Outcome};

pub const MAX_DIMENSION: usize = 10;
const MEB_TOL: f64 = 1e-9;

#[derive(Debug, Serialize)]
pub struct JungReport {
    pub config: JungArgs,
    pub r_n: f64,
    pub simplex_radius: f64,
    pub simplex_error: f64,
    pub single_point_radius: f64,
    pub clouds: usize,
    pub max_radius: f64,
    pub violations: usize,
    pub pass: bool,
}

/// Vertices of a regular `n`-simplex with unit edges in `ℝⁿ`: `e_i/√2` and
/// `t(1, …, 1)` with `(n - 1)t² + (t - 1/√2)² = 1`.
pub fn regular_simplex(n: usize) -> CliResult<PointSet> {
    if n == 0 {
        return Err(CliError::Config("n must be positive".into()));
    }
    let nf = n as f64;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let t = s * (1.0 - (nf + 1.0).sqrt()) / nf;
    let mut pts: Vec<Vector> = (0..n).map(|i| Vector::basis(n, i).scale(s)).collect();
    pts.push(Vector::new(vec![t; n])?);
    Ok(PointSet::new(n, pts)?)
}

/// Enclosing radius of a random cloud rescaled to diameter 1.
fn cloud_radius(n: usize, size: usize, rng: &mut RngStream) -> CliResult<f64> {
    let pts: Vec<Vector> = (0..size)
        .map(|_| Vector::new((0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()))
        .collect::<Result<_, _>>()?;
    let ps = PointSet::new(n, pts)?;
    let d = diameter(&ps)?;
    if d == 0.0 {
        return Ok(0.0);
    }
    Ok(min_enclosing_ball(&ps.scaled(1.0 / d), MEB_TOL)?.radius)
}

pub fn run(args: &JungArgs) -> CliResult<Outcome> {
    let n = args.n;
    if n == 0 || n > MAX_DIMENSION {
        return Err(CliError::Config(format!("n must lie in 1..={MAX_DIMENSION}, got {n}")));
    }
    if args.tol.is_nan() || args.tol < 0.0 {
        return Err(CliError::Config("tol must be nonnegative".into()));
    }
    if args.points == Some(0) {
        return Err(CliError::Config("points must be positive".into()));
    }
    let rn = jung_radius(n)?;
    let simplex_radius = min_enclosing_ball(&regular_simplex(n)?, MEB_TOL)?.radius;
    let single = min_enclosing_ball(&PointSet::new(n, vec![Vector::zeros(n)])?, MEB_TOL)?.radius;
    let mut max_radius = 0.0f64;
    let mut violations = 0;
    for i in 0..args.samples {
        let mut rng = RngStream::new(args.seed, 0).derive(i as u64);
        let size = match args.points {
            Some(p) => p,
            None => rng.random_range(2..=4 * n.max(1)),
        };
        let radius = cloud_radius(n, size, &mut rng)?;
        max_radius = max_radius.max(radius);
        if radius > rn + args.tol {
            violations += 1;
        }
    }
    let simplex_error = (simplex_radius - rn).abs();
    let pass = violations == 0 && simplex_error <= args.tol && single == 0.0;
    let report = JungReport {
        config: args.clone(),
        r_n: rn,
        simplex_radius,
        simplex_error,
        single_point_radius: single,
        clouds: args.samples,
        max_radius,
        violations,
        pass,
    };
    Ok(Outcome {
        pass,
        body: canonical_json(&report)?,
    })
}
