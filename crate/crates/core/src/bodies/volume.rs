//! Monte Carlo volume estimates with Wilson score intervals.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Body;
use crate::error::{invalid, Error, Result};
use crate::geom_core::{sample_in_ball, Ball};
use crate::RngStream;

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959963984540054;
const MIN_SAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    pub mean: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub samples: usize,
}

impl VolumeEstimate {
    fn from_hits(hits: usize, samples: usize, scale: f64) -> Self {
        let (lo, hi) = wilson_interval(hits, samples, Z_95);
        Self {
            mean: scale * hits as f64 / samples as f64,
            ci_low: scale * lo,
            ci_high: scale * hi,
            samples,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.ci_low <= x && x <= self.ci_high
    }

    pub fn overlaps(&self, other: &VolumeEstimate) -> bool {
        self.ci_low <= other.ci_high && other.ci_low <= self.ci_high
    }
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(hits: usize, samples: usize, z: f64) -> (f64, f64) {
    let n = samples as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

fn check(samples: usize, bound: &Ball) -> Result<()> {
    if samples < MIN_SAMPLES {
        return Err(invalid("samples", format!("must be at least {MIN_SAMPLES}, got {samples}")));
    }
    if bound.radius <= 0.0 {
        return Err(Error::DegenerateBound);
    }
    Ok(())
}

fn count_hits<R: Rng + ?Sized>(body: &Body, window: &Ball, samples: usize, rng: &mut R) -> Result<usize> {
    let mut hits = 0;
    for _ in 0..samples {
        if body.contains(&sample_in_ball(window, rng))? {
            hits += 1;
        }
    }
    Ok(hits)
}

/// Hit rate of uniform samples in the bounding ball times its volume.
///
/// A body that fills its bound returns the exact volume with a zero-width
/// interval.
pub fn mc_volume<R: Rng + ?Sized>(body: &Body, samples: usize, rng: &mut R) -> Result<VolumeEstimate> {
    check(samples, body.bound())?;
    let vol = body.bound().volume();
    if body.fills_bound() {
        return Ok(VolumeEstimate {
            mean: vol,
            ci_low: vol,
            ci_high: vol,
            samples,
        });
    }
    let hits = count_hits(body, body.bound(), samples, rng)?;
    Ok(VolumeEstimate::from_hits(hits, samples, vol))
}

/// Estimate of `Vol(body ∩ window) / Vol(window)`.
pub fn mc_overlap_fraction<R: Rng + ?Sized>(
    body: &Body,
    window: &Ball,
    samples: usize,
    rng: &mut R,
) -> Result<VolumeEstimate> {
    window.center.check_dim(body.dim())?;
    check(samples, window)?;
    let hits = count_hits(body, window, samples, rng)?;
    Ok(VolumeEstimate::from_hits(hits, samples, 1.0))
}

/// [`mc_volume`] split across `workers` threads, worker `i` drawing from
/// `rng.derive(i)`. The result depends only on the stream and `workers`.
pub fn mc_volume_parallel(body: &Body, samples: usize, workers: usize, rng: &RngStream) -> Result<VolumeEstimate> {
    check(samples, body.bound())?;
    let workers = workers.max(1);
    if body.fills_bound() {
        return mc_volume(body, samples, &mut rng.derive(0));
    }
    let counts: Vec<Result<usize>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let share = samples / workers + usize::from(w < samples % workers);
                let mut stream = rng.derive(w as u64);
                s.spawn(move || count_hits(body, body.bound(), share, &mut stream))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut hits = 0;
    for c in counts {
        hits += c?;
    }
    Ok(VolumeEstimate::from_hits(hits, samples, body.bound().volume()))
}
