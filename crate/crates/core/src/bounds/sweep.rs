//! One-dimensional sweep sets `T(1, h₁, h₂, U) = {x : [x + h₁, x + h₂] ⊆ U}`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Finite union of closed intervals, kept sorted with overlapping or
/// touching pieces merged.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        for &(a, b) in &intervals {
            if !(a.is_finite() && b.is_finite() && a <= b) {
                return Err(invalid("intervals", format!("[{a}, {b}] is not a finite interval")));
            }
        }
        intervals.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for (a, b) in intervals {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        Ok(Self { intervals: merged })
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn length(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| a <= x && x <= b)
    }

    pub fn intersection(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a1, b1) = self.intervals[i];
            let (a2, b2) = other.intervals[j];
            let (lo, hi) = (a1.max(a2), b1.min(b2));
            if lo <= hi {
                out.push((lo, hi));
            }
            if b1 < b2 {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalUnion { intervals: out }
    }

    /// Lebesgue measure of `self \ other`.
    pub fn difference_length(&self, other: &IntervalUnion) -> f64 {
        self.length() - self.intersection(other).length()
    }
}

/// `{x : [x + h₁, x + h₂] ⊆ U}`, by eroding each interval to `[a - h₁, b - h₂]`.
pub fn sweep_set_1d(u: &IntervalUnion, h1: f64, h2: f64) -> Result<IntervalUnion> {
    if !(h1 > 0.0 && h2 > h1 && h2.is_finite()) {
        return Err(invalid("h", format!("need 0 < h1 < h2, got h1 = {h1}, h2 = {h2}")));
    }
    let eroded = u
        .intervals
        .iter()
        .filter(|(a, b)| b - a >= h2 - h1)
        .map(|&(a, b)| (a - h1, b - h2))
        .collect();
    IntervalUnion::new(eroded)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub trials: usize,
    pub violations: usize,
    /// Largest `|T \ U| / (h₁/(h₂ - h₁) |U|)` seen.
    pub max_ratio: f64,
}

const DYADIC: f64 = 1024.0;

fn dyadic<R: Rng + ?Sized>(rng: &mut R, max_units: u32) -> f64 {
    rng.random_range(0..=max_units) as f64 / DYADIC
}

/// Checks `|T \ U| ≤ h₁/(h₂ - h₁) |U|` on random unions with endpoints and
/// offsets on the grid `2⁻¹⁰ ℤ ∩ [0, 8]`, where every operation is exact.
pub fn verify_sweep_inequality<R: Rng + ?Sized>(trials: usize, rng: &mut R) -> SweepReport {
    let mut violations = 0;
    let mut max_ratio = 0.0f64;
    for _ in 0..trials {
        let pieces = rng.random_range(1..=6);
        let raw: Vec<(f64, f64)> = (0..pieces)
            .map(|_| {
                let a = dyadic(rng, 6 * 1024);
                (a, a + dyadic(rng, 2 * 1024))
            })
            .collect();
        let u = IntervalUnion::new(raw).expect("finite dyadic intervals");
        let h1 = dyadic(rng, 1023) + 1.0 / DYADIC;
        let h2 = h1 + dyadic(rng, 2047) + 1.0 / DYADIC;
        let t = sweep_set_1d(&u, h1, h2).expect("valid offsets");
        let lhs = t.difference_length(&u);
        let rhs = h1 / (h2 - h1) * u.length();
        // Cross-multiplied so the comparison stays exact on the dyadic grid.
        if lhs * (h2 - h1) > h1 * u.length() {
            violations += 1;
        }
        if rhs > 0.0 {
            max_ratio = max_ratio.max(lhs / rhs);
        }
    }
    SweepReport {
        trials,
        violations,
        max_ratio,
    }
}
