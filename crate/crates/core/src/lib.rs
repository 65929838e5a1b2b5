//! Constructive machinery behind volume lower bounds for universal covers.
//!
//! The crate is organised bottom-up:
//!
//! * [`geom_core`]: vectors, seeded sampling, diameters, minimum enclosing
//!   balls and spherical-cap measures.
//! * [`bodies`]: membership oracles for measurable sets, thickening,
//!   isometric transforms and Monte Carlo volume.
//! * [`isometry_nets`]: finite nets on the orthogonal group, translation
//!   coverings and finite families of congruent placements.
//! * [`coclique`]: the randomized deletion construction of large cocliques
//!   that no `k` members of a finite family cover.
//! * [`bounds`]: log-space evaluators of the volume bound and desk-scale
//!   verifiers of the auxiliary inequalities.

pub mod bodies;
pub mod bounds;
pub mod coclique;
mod error;
pub mod geom_core;
pub mod isometry_nets;
mod rng;

pub use error::{Error, Result};
pub use rng::RngStream;
