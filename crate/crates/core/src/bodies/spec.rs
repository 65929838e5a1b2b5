//! JSON representation of bodies.

use serde::{Deserialize, Serialize};

use super::{Body, BodyKind, Halfspace};
use crate::error::{Error, Result};
use crate::geom_core::{Ball, Vector};
use crate::isometry_nets::Isometry;

/// Serialized form of a [`Body`], tagged by `"kind"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodySpec {
    Ball {
        dim: usize,
        center: Vector,
        radius: f64,
    },
    Halfspaces {
        dim: usize,
        halfspaces: Vec<Halfspace>,
        bound: Ball,
    },
    BallIntersection {
        dim: usize,
        balls: Vec<Ball>,
    },
    Thickened {
        dim: usize,
        base: Box<BodySpec>,
        eps: f64,
    },
    Transformed {
        dim: usize,
        base: Box<BodySpec>,
        isometry: Isometry,
    },
    Union {
        dim: usize,
        parts: Vec<BodySpec>,
    },
}

impl BodySpec {
    pub fn dim(&self) -> usize {
        match self {
            BodySpec::Ball { dim, .. }
            | BodySpec::Halfspaces { dim, .. }
            | BodySpec::BallIntersection { dim, .. }
            | BodySpec::Thickened { dim, .. }
            | BodySpec::Transformed { dim, .. }
            | BodySpec::Union { dim, .. } => *dim,
        }
    }

    pub fn build(&self) -> Result<Body> {
        let body = match self {
            BodySpec::Ball { center, radius, .. } => Body::ball(Ball::new(center.clone(), *radius)?),
            BodySpec::Halfspaces { halfspaces, bound, .. } => Body::halfspaces(halfspaces.clone(), bound.clone())?,
            BodySpec::BallIntersection { balls, .. } => Body::ball_intersection(balls.clone())?,
            BodySpec::Thickened { base, eps, .. } => base.build()?.thicken(*eps)?,
            BodySpec::Transformed { base, isometry, .. } => base.build()?.transform(isometry)?,
            BodySpec::Union { parts, .. } => Body::union(parts.iter().map(BodySpec::build).collect::<Result<_>>()?)?,
        };
        if body.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: body.dim(),
            });
        }
        Ok(body)
    }
}

impl From<&Body> for BodySpec {
    fn from(body: &Body) -> Self {
        let dim = body.dim();
        match body.kind() {
            BodyKind::Ball(b) => BodySpec::Ball {
                dim,
                center: b.center.clone(),
                radius: b.radius,
            },
            BodyKind::Halfspaces(hs) => BodySpec::Halfspaces {
                dim,
                halfspaces: hs.clone(),
                bound: body.bound().clone(),
            },
            BodyKind::BallIntersection(bs) => BodySpec::BallIntersection { dim, balls: bs.clone() },
            BodyKind::Thickened { base, eps } => BodySpec::Thickened {
                dim,
                base: Box::new(base.as_ref().into()),
                eps: *eps,
            },
            BodyKind::Transformed { base, isometry } => BodySpec::Transformed {
                dim,
                base: Box::new(base.as_ref().into()),
                isometry: isometry.clone(),
            },
            BodyKind::Union(parts) => BodySpec::Union {
                dim,
                parts: parts.iter().map(BodySpec::from).collect(),
            },
        }
    }
}

impl From<Body> for BodySpec {
    fn from(body: Body) -> Self {
        (&body).into()
    }
}

impl TryFrom<BodySpec> for Body {
    type Error = Error;

    fn try_from(spec: BodySpec) -> Result<Self> {
        spec.build()
    }
}

impl Serialize for Body {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BodySpec::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Body {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        BodySpec::deserialize(d)?.build().map_err(serde::de::Error::custom)
    }
}
