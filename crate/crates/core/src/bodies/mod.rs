//! Measurable sets with membership and distance oracles.
//!
//! A [`Body`] is an immutable value carrying a bounding ball that contains
//! every member point. Thickening `U + εB_n` is supported for bodies that
//! expose a Euclidean distance: balls in closed form, convex bodies by
//! Dykstra's alternating projections, unions by the minimum over parts.

mod spec;
mod volume;

pub use spec::BodySpec;
pub use volume::{mc_overlap_fraction, mc_volume, mc_volume_parallel, wilson_interval, VolumeEstimate};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geom_core::{min_enclosing_ball, sample_in_ball, Ball, PointSet, Vector, GEOM_TOL};
use crate::isometry_nets::Isometry;

const PROJECTION_TOL: f64 = 1e-9;
const PROJECTION_MAX_ITER: usize = 10_000;

/// Closed halfspace `{x : normal·x ≤ offset}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawHalfspace")]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: f64,
}

#[derive(Deserialize)]
struct RawHalfspace {
    normal: Vector,
    offset: f64,
}

impl TryFrom<RawHalfspace> for Halfspace {
    type Error = Error;

    fn try_from(raw: RawHalfspace) -> Result<Self> {
        Halfspace::new(raw.normal, raw.offset)
    }
}

impl Halfspace {
    pub fn new(normal: Vector, offset: f64) -> Result<Self> {
        if normal.is_zero() {
            return Err(invalid("normal", "must be nonzero"));
        }
        if !offset.is_finite() {
            return Err(invalid("offset", "must be finite"));
        }
        Ok(Self { normal, offset })
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// Signed distance to the boundary (positive outside).
    pub fn excess(&self, p: &Vector) -> f64 {
        (self.normal.dot(p) - self.offset) / self.normal.norm()
    }

    fn contains(&self, p: &Vector) -> bool {
        self.excess(p) <= GEOM_TOL
    }

    fn project(&self, p: &Vector) -> Vector {
        let e = self.normal.dot(p) - self.offset;
        if e <= 0.0 {
            p.clone()
        } else {
            p.add_scaled(-e / self.normal.norm_sq(), &self.normal)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BodyKind {
    Ball(Ball),
    /// Intersection of halfspaces with the bounding ball.
    Halfspaces(Vec<Halfspace>),
    BallIntersection(Vec<Ball>),
    Thickened { base: Box<Body>, eps: f64 },
    Transformed { base: Box<Body>, isometry: Isometry },
    Union(Vec<Body>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Body {
    dim: usize,
    kind: BodyKind,
    bound: Ball,
}

enum ConvexPiece<'a> {
    Half(&'a Halfspace),
    Ball(&'a Ball),
}

impl ConvexPiece<'_> {
    fn project(&self, p: &Vector) -> Vector {
        match self {
            ConvexPiece::Half(h) => h.project(p),
            ConvexPiece::Ball(b) => project_ball(b, p),
        }
    }
}

fn project_ball(b: &Ball, p: &Vector) -> Vector {
    let d = b.center.dist(p);
    if d <= b.radius {
        p.clone()
    } else {
        b.center.add_scaled(b.radius / d, &(p - &b.center))
    }
}

/// Euclidean projection onto an intersection of closed convex sets.
fn dykstra(pieces: &[ConvexPiece<'_>], p: &Vector) -> Result<Vector> {
    let n = p.dim();
    let mut x = p.clone();
    let mut incr = vec![Vector::zeros(n); pieces.len()];
    for _ in 0..PROJECTION_MAX_ITER {
        let mut moved = 0.0;
        for (piece, y) in pieces.iter().zip(incr.iter_mut()) {
            let z = &x + &*y;
            let next = piece.project(&z);
            *y = &z - &next;
            moved += next.dist_sq(&x);
            x = next;
        }
        if moved.sqrt() <= PROJECTION_TOL {
            return Ok(x);
        }
    }
    Err(Error::NonConvergence {
        what: "convex projection",
        iterations: PROJECTION_MAX_ITER,
    })
}

impl Body {
    pub fn ball(ball: Ball) -> Self {
        Self {
            dim: ball.dim(),
            bound: ball.clone(),
            kind: BodyKind::Ball(ball),
        }
    }

    /// `{x ∈ bound : normalᵢ·x ≤ offsetᵢ}`.
    pub fn halfspaces(halfspaces: Vec<Halfspace>, bound: Ball) -> Result<Self> {
        let n = bound.dim();
        for h in &halfspaces {
            h.normal.check_dim(n)?;
        }
        Ok(Self {
            dim: n,
            kind: BodyKind::Halfspaces(halfspaces),
            bound,
        })
    }

    /// Axis-parallel box `[lower, upper]`.
    pub fn axis_box(lower: &Vector, upper: &Vector) -> Result<Self> {
        let n = lower.dim();
        upper.check_dim(n)?;
        if (0..n).any(|i| lower[i] > upper[i]) {
            return Err(invalid("upper", "must dominate lower coordinatewise"));
        }
        let mut hs = Vec::with_capacity(2 * n);
        for i in 0..n {
            hs.push(Halfspace::new(Vector::basis(n, i), upper[i])?);
            hs.push(Halfspace::new(Vector::basis(n, i).scale(-1.0), -lower[i])?);
        }
        let center = (lower + upper).scale(0.5);
        let radius = lower.dist(upper) / 2.0;
        Self::halfspaces(hs, Ball::new(center, radius)?)
    }

    /// Line segment `[a, b]`, as a degenerate polytope.
    pub fn segment(a: &Vector, b: &Vector) -> Result<Self> {
        let n = a.dim();
        b.check_dim(n)?;
        let dir = b - a;
        let bound = Ball::new((a + b).scale(0.5), a.dist(b) / 2.0)?;
        if dir.is_zero() {
            return Ok(Self::ball(bound));
        }
        let mut hs = vec![
            Halfspace::new(dir.clone(), dir.dot(b))?,
            Halfspace::new(dir.scale(-1.0), -dir.dot(a))?,
        ];
        for w in orthogonal_complement(&dir) {
            let c = w.dot(a);
            hs.push(Halfspace::new(w.clone(), c)?);
            hs.push(Halfspace::new(w.scale(-1.0), -c)?);
        }
        Self::halfspaces(hs, bound)
    }

    pub fn ball_intersection(balls: Vec<Ball>) -> Result<Self> {
        let first = balls.first().ok_or_else(|| invalid("balls", "must be nonempty"))?;
        let n = first.dim();
        for b in &balls {
            b.center.check_dim(n)?;
        }
        let bound = balls
            .iter()
            .min_by(|a, b| a.radius.total_cmp(&b.radius))
            .cloned()
            .expect("nonempty");
        Ok(Self {
            dim: n,
            kind: BodyKind::BallIntersection(balls),
            bound,
        })
    }

    pub fn union(parts: Vec<Body>) -> Result<Self> {
        let first = parts.first().ok_or_else(|| invalid("parts", "must be nonempty"))?;
        let n = first.dim;
        for p in &parts {
            if p.dim != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: p.dim,
                });
            }
        }
        let centers = PointSet::new(n, parts.iter().map(|p| p.bound.center.clone()).collect())?;
        let center = min_enclosing_ball(&centers, 1e-9)?.center;
        let radius = parts
            .iter()
            .map(|p| center.dist(&p.bound.center) + p.bound.radius)
            .fold(0.0, f64::max);
        Ok(Self {
            dim: n,
            kind: BodyKind::Union(parts),
            bound: Ball::new(center, radius)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &BodyKind {
        &self.kind
    }

    /// Ball guaranteed to contain the body.
    pub fn bound(&self) -> &Ball {
        &self.bound
    }

    /// Upper bound on the diameter.
    pub fn diameter_bound(&self) -> f64 {
        2.0 * self.bound.radius
    }

    /// `U + εB_n`.
    pub fn thicken(&self, eps: f64) -> Result<Body> {
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(invalid("eps", format!("must be finite and >= 0, got {eps}")));
        }
        let (base, total) = match &self.kind {
            BodyKind::Thickened { base, eps: inner } => (base.as_ref().clone(), inner + eps),
            _ => (self.clone(), eps),
        };
        let bound = base.bound.inflated(total);
        Ok(Self {
            dim: self.dim,
            kind: BodyKind::Thickened {
                base: Box::new(base),
                eps: total,
            },
            bound,
        })
    }

    /// `g(U)`. Nested transforms are composed into one isometry.
    pub fn transform(&self, g: &Isometry) -> Result<Body> {
        if g.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: g.dim(),
            });
        }
        let (base, iso) = match &self.kind {
            BodyKind::Transformed { base, isometry } => (base.as_ref().clone(), g.compose(isometry)),
            _ => (self.clone(), g.clone()),
        };
        let bound = Ball {
            center: iso.apply(&base.bound.center),
            radius: base.bound.radius,
        };
        Ok(Self {
            dim: self.dim,
            kind: BodyKind::Transformed {
                base: Box::new(base),
                isometry: iso,
            },
            bound,
        })
    }

    pub fn contains(&self, p: &Vector) -> Result<bool> {
        p.check_dim(self.dim)?;
        if !self.bound.contains(p) {
            return Ok(false);
        }
        self.contains_unchecked(p)
    }

    fn contains_unchecked(&self, p: &Vector) -> Result<bool> {
        Ok(match &self.kind {
            BodyKind::Ball(b) => b.contains(p),
            BodyKind::Halfspaces(hs) => hs.iter().all(|h| h.contains(p)),
            BodyKind::BallIntersection(bs) => bs.iter().all(|b| b.contains(p)),
            BodyKind::Thickened { base, eps } => base.distance_unchecked(p)? <= eps + GEOM_TOL,
            BodyKind::Transformed { base, isometry } => base.contains(&isometry.apply_inverse(p))?,
            BodyKind::Union(parts) => {
                for part in parts {
                    if part.contains(p)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }

    /// Euclidean distance from `p` to the body.
    pub fn distance(&self, p: &Vector) -> Result<f64> {
        p.check_dim(self.dim)?;
        self.distance_unchecked(p)
    }

    fn distance_unchecked(&self, p: &Vector) -> Result<f64> {
        match &self.kind {
            BodyKind::Ball(b) => Ok((b.center.dist(p) - b.radius).max(0.0)),
            BodyKind::Halfspaces(hs) => {
                if self.contains(p)? {
                    return Ok(0.0);
                }
                let mut pieces: Vec<ConvexPiece<'_>> = hs.iter().map(ConvexPiece::Half).collect();
                pieces.push(ConvexPiece::Ball(&self.bound));
                Ok(dykstra(&pieces, p)?.dist(p))
            }
            BodyKind::BallIntersection(bs) => {
                if self.contains(p)? {
                    return Ok(0.0);
                }
                let pieces: Vec<ConvexPiece<'_>> = bs.iter().map(ConvexPiece::Ball).collect();
                Ok(dykstra(&pieces, p)?.dist(p))
            }
            BodyKind::Thickened { base, eps } => Ok((base.distance_unchecked(p)? - eps).max(0.0)),
            BodyKind::Transformed { base, isometry } => base.distance_unchecked(&isometry.apply_inverse(p)),
            BodyKind::Union(parts) => {
                let mut best = f64::INFINITY;
                for part in parts {
                    best = best.min(part.distance_unchecked(p)?);
                    if best == 0.0 {
                        break;
                    }
                }
                Ok(best)
            }
        }
    }

    /// Whether the body equals its bounding ball.
    pub fn fills_bound(&self) -> bool {
        match &self.kind {
            BodyKind::Ball(_) => true,
            BodyKind::Thickened { base, .. } | BodyKind::Transformed { base, .. } => base.fills_bound(),
            _ => false,
        }
    }

    /// Closed-form volume when the body is a ball up to isometry.
    pub fn exact_volume(&self) -> Option<f64> {
        self.fills_bound().then(|| self.bound.volume())
    }

    /// Whether every rotation about the origin maps the body onto itself.
    pub fn is_rotation_invariant(&self) -> bool {
        match &self.kind {
            BodyKind::Ball(b) => b.center.is_zero(),
            BodyKind::Thickened { base, .. } => base.is_rotation_invariant(),
            BodyKind::Transformed { base, isometry } => {
                isometry.translation().is_zero() && base.is_rotation_invariant()
            }
            BodyKind::BallIntersection(bs) => bs.iter().all(|b| b.center.is_zero()),
            BodyKind::Union(parts) => parts.iter().all(Body::is_rotation_invariant),
            BodyKind::Halfspaces(_) => false,
        }
    }

    /// Uniform point of the body by rejection from the bounding ball.
    pub fn sample_interior<R: Rng + ?Sized>(&self, max_attempts: usize, rng: &mut R) -> Result<Vector> {
        for _ in 0..max_attempts {
            let p = sample_in_ball(&self.bound, rng);
            if self.contains_unchecked(&p)? {
                return Ok(p);
            }
        }
        Err(Error::NonConvergence {
            what: "rejection sampling",
            iterations: max_attempts,
        })
    }
}

/// Orthonormal basis of the complement of `dir` by Gram-Schmidt on the
/// standard basis.
fn orthogonal_complement(dir: &Vector) -> Vec<Vector> {
    let n = dir.dim();
    let mut basis = vec![dir.scale(1.0 / dir.norm())];
    for i in 0..n {
        let mut v = Vector::basis(n, i);
        for b in &basis {
            v = v.add_scaled(-v.dot(b), b);
        }
        let norm = v.norm();
        if norm > 1e-8 {
            basis.push(v.scale(1.0 / norm));
        }
        if basis.len() == n {
            break;
        }
    }
    basis.split_off(1)
}
