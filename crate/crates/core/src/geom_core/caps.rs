//! Normalized measure of spherical caps.
//!
//! `m(α) = ½ I_{sin²α}((n-1)/2, ½)` for `α ≤ π/2`, extended by
//! `m(α) + m(π - α) = 1`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::special::ln_beta_reg;
use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapBounds {
    pub lower: f64,
    pub upper: f64,
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(invalid("n", format!("cap measures need n >= 2, got {n}")));
    }
    Ok(())
}

/// `ln m(α)` for `n >= 2`, `0 < α < π`.
pub fn ln_cap_measure_exact(n: usize, alpha: f64) -> Result<f64> {
    check_n(n)?;
    if !(alpha > 0.0 && alpha < PI) {
        return Err(invalid("alpha", format!("must lie in (0, π), got {alpha}")));
    }
    if alpha > FRAC_PI_2 {
        let rest = ln_half_cap(n, PI - alpha).exp();
        return Ok((-rest).ln_1p());
    }
    Ok(ln_half_cap(n, alpha))
}

fn ln_half_cap(n: usize, alpha: f64) -> f64 {
    let (s, c) = alpha.sin_cos();
    let a = (n as f64 - 1.0) / 2.0;
    0.5f64.ln() + ln_beta_reg(a, 0.5, s * s, c * c)
}

pub fn cap_measure_exact(n: usize, alpha: f64) -> Result<f64> {
    ln_cap_measure_exact(n, alpha).map(f64::exp)
}

/// Natural logs of the two-sided estimate
/// `sin^{n-1}α / √(2πn) < m(α) < sin^{n-1}α / (√(2π(n-1)) cos α)`,
/// valid for `0 < α < π/2`.
pub fn ln_cap_measure_bounds(n: usize, alpha: f64) -> Result<CapBounds> {
    check_n(n)?;
    if !(alpha > 0.0 && alpha < FRAC_PI_2) {
        return Err(invalid("alpha", format!("must lie in (0, π/2), got {alpha}")));
    }
    let nf = n as f64;
    let ln_sin_pow = (nf - 1.0) * alpha.sin().ln();
    let lower = ln_sin_pow - 0.5 * (2.0 * PI * nf).ln();
    let upper = ln_sin_pow - 0.5 * (2.0 * PI * (nf - 1.0)).ln() - alpha.cos().ln();
    Ok(CapBounds { lower, upper })
}

pub fn cap_measure_bounds(n: usize, alpha: f64) -> Result<CapBounds> {
    let ln = ln_cap_measure_bounds(n, alpha)?;
    Ok(CapBounds {
        lower: ln.lower.exp(),
        upper: ln.upper.exp(),
    })
}
