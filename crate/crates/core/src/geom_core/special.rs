//! Regularized incomplete beta function in log space.

use statrs::function::gamma::ln_gamma;

const MAX_ITER: usize = 200_000;
const CF_EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;

pub(crate) fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// `ln I_x(a, b)` where the caller supplies both `x` and `1 - x` so that
/// values of `x` near 1 keep full relative precision in `1 - x`.
pub(crate) fn ln_beta_reg(a: f64, b: f64, x: f64, one_minus_x: f64) -> f64 {
    debug_assert!(a > 0.0 && b > 0.0);
    if x <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if one_minus_x <= 0.0 {
        return 0.0;
    }
    if x < (a + 1.0) / (a + b + 2.0) {
        ln_direct(a, b, x, one_minus_x)
    } else {
        // I_x(a, b) = 1 - I_{1-x}(b, a)
        let ic = ln_direct(b, a, one_minus_x, x).exp();
        (-ic).ln_1p()
    }
}

#[cfg(test)]
fn beta_reg(a: f64, b: f64, x: f64) -> f64 {
    ln_beta_reg(a, b, x, 1.0 - x).exp()
}

fn ln_direct(a: f64, b: f64, x: f64, one_minus_x: f64) -> f64 {
    a * x.ln() + b * one_minus_x.ln() - ln_beta(a, b) - a.ln() + continued_fraction(a, b, x).ln()
}

/// Modified Lentz evaluation of the incomplete-beta continued fraction.
fn continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < CF_EPS {
            break;
        }
    }
    h
}
