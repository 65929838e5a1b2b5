//! Binomial tail bounds.

/// `ln (2ekp)^{M/(2k)}`.
pub fn ln_chernoff_bound(m: usize, k: usize, p: f64) -> f64 {
    m as f64 / (2.0 * k as f64) * (2.0 * std::f64::consts::E * k as f64 * p).ln()
}

/// `(2ekp)^{M/(2k)}`, an upper bound on `P(Bin(M, p) ≥ M/(2k))`.
pub fn chernoff_bound(m: usize, k: usize, p: f64) -> f64 {
    ln_chernoff_bound(m, k, p).exp()
}

/// `ln C(m, j)` for `j = 0..=m`, by the multiplicative recurrence.
fn ln_choose_row(m: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(m + 1);
    let mut acc = 0.0;
    row.push(acc);
    for j in 0..m {
        acc += ((m - j) as f64).ln() - ((j + 1) as f64).ln();
        row.push(acc);
    }
    row
}

fn ln_sum_exp(terms: impl Iterator<Item = f64> + Clone) -> f64 {
    let top = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + terms.map(|x| (x - top).exp()).sum::<f64>().ln()
}

/// `ln P(Bin(M, p) ≥ t)` by log-sum-exp over the tail terms, or over the
/// complementary head when the tail holds most of the mass.
pub fn ln_exact_binomial_tail(m: usize, p: f64, t: usize) -> f64 {
    if t == 0 || p >= 1.0 {
        return if t <= m { 0.0 } else { f64::NEG_INFINITY };
    }
    if t > m || p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    let row = ln_choose_row(m);
    let term = |j: usize| row[j] + j as f64 * lp + (m - j) as f64 * lq;
    if (t as f64) <= m as f64 * p {
        let head = ln_sum_exp((0..t).map(term));
        return (-head.exp()).ln_1p();
    }
    ln_sum_exp((t..=m).map(term)).min(0.0)
}

pub fn exact_binomial_tail(m: usize, p: f64, t: usize) -> f64 {
    ln_exact_binomial_tail(m, p, t).exp()
}
