//! Randomized construction of cocliques that no `k` members of a finite
//! family can cover.
//!
//! Draw `M` i.i.d. points, delete one endpoint of every edge among them and
//! keep the result if each family member holds fewer than `M/(2k)` of the
//! survivors. Then `k` members cover fewer than `M/2 ≤ |X|` points.

mod geometric;
mod tail;

pub use geometric::{edge_measure_audit, edge_threshold, geometric_spec, AnchorAudit, EdgeAuditReport};
pub use tail::{chernoff_bound, exact_binomial_tail, ln_chernoff_bound, ln_exact_binomial_tail};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::RngStream;

/// Largest number of `k`-subsets enumerated by [`Acceptance::ExhaustiveNonCover`].
pub const MAX_ENUMERATED_SUBSETS: u64 = 1_000_000;
pub const DEFAULT_MAX_RETRIES: usize = 64;

pub type Sampler<P> = Box<dyn Fn(&mut RngStream) -> P + Send + Sync>;
pub type EdgePredicate<P> = Box<dyn Fn(&P, &P) -> bool + Send + Sync>;
pub type Membership<P> = Box<dyn Fn(&P) -> bool + Send + Sync>;

/// A graph on a probability space together with a finite family of sets.
pub struct MeasurableGraphSpec<P> {
    pub sampler: Sampler<P>,
    /// Symmetric and irreflexive.
    pub edge: EdgePredicate<P>,
    pub family: Vec<Membership<P>>,
    pub labels: Vec<String>,
}

impl<P> MeasurableGraphSpec<P> {
    /// Checks symmetry and irreflexivity of the edge relation on `probes`
    /// random pairs; returns the number of violations.
    pub fn edge_violations(&self, probes: usize, rng: &mut RngStream) -> usize {
        let mut bad = 0;
        for _ in 0..probes {
            let x = (self.sampler)(rng);
            let y = (self.sampler)(rng);
            if (self.edge)(&x, &x) || (self.edge)(&x, &y) != (self.edge)(&y, &x) {
                bad += 1;
            }
        }
        bad
    }
}

/// Rule deciding whether a coclique is accepted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Acceptance {
    /// Every member holds fewer than `M/(2k)` points of `X`.
    #[default]
    PerMemberThreshold,
    /// No `k` members cover `X`, checked over all `k`-subsets when there
    /// are at most [`MAX_ENUMERATED_SUBSETS`] of them and otherwise by the
    /// sufficient condition `k·|X ∩ Y| < |X|` for every member.
    ExhaustiveNonCover,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CocliqueParams {
    pub m: usize,
    pub k: usize,
    pub p: f64,
    pub max_retries: usize,
    pub acceptance: Acceptance,
}

impl CocliqueParams {
    pub fn new(m: usize, k: usize, p: f64) -> Result<Self> {
        if m == 0 {
            return Err(invalid("m", "must be at least 1"));
        }
        if k == 0 {
            return Err(invalid("k", "must be at least 1"));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(invalid("p", format!("must lie in (0, 1], got {p}")));
        }
        Ok(Self {
            m,
            k,
            p,
            max_retries: DEFAULT_MAX_RETRIES,
            acceptance: Acceptance::default(),
        })
    }

    pub fn with_retries(mut self, max_retries: usize) -> Self {
        self.max_retries = max_retries.max(1);
        self
    }

    pub fn with_acceptance(mut self, acceptance: Acceptance) -> Self {
        self.acceptance = acceptance;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub pass: bool,
    /// Natural log of (allowed / actual); nonnegative when the condition holds.
    pub margin: f64,
}

impl Condition {
    fn from_margin(margin: f64) -> Self {
        Self {
            pass: margin >= -1e-12,
            margin,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    /// `ν(Y) ≤ p` for every member.
    pub member_measure: Condition,
    /// `|𝒴| ≤ ½ (2ekp)^{-M/(2k)}`.
    pub family_size: Condition,
    /// `(ν×ν)(E) ≤ 1/(2M)`.
    pub edge_measure: Condition,
    /// `1 ≤ k ≤ 1/(2p)`.
    pub domain: Condition,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.member_measure.pass && self.family_size.pass && self.edge_measure.pass && self.domain.pass
    }
}

fn ln_ratio(allowed: f64, actual: f64) -> f64 {
    if actual <= 0.0 {
        f64::INFINITY
    } else {
        allowed.ln() - actual.ln()
    }
}

pub fn check_hypotheses(
    params: &CocliqueParams,
    family_size: usize,
    nu_y_bounds: &[f64],
    edge_measure: f64,
) -> HypothesisReport {
    let m = params.m as f64;
    let k = params.k as f64;
    let max_nu = nu_y_bounds.iter().copied().fold(0.0, f64::max);
    let ln_allowed_family = -(2f64.ln()) - ln_chernoff_bound(params.m, params.k, params.p);
    let family = if family_size == 0 {
        f64::INFINITY
    } else {
        ln_allowed_family - (family_size as f64).ln()
    };
    HypothesisReport {
        member_measure: Condition::from_margin(ln_ratio(params.p, max_nu)),
        family_size: Condition::from_margin(family),
        edge_measure: Condition::from_margin(ln_ratio(1.0 / (2.0 * m), edge_measure)),
        domain: Condition::from_margin(-(2.0 * k * params.p).ln()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttemptLog {
    pub attempt: usize,
    pub edges: usize,
    pub deleted: usize,
    /// Largest `|X ∩ Y|`, absent when the edge check already failed.
    pub max_count: Option<usize>,
    pub success: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CocliqueResult<P> {
    pub points: Vec<P>,
    pub params: CocliqueParams,
    pub retries_used: usize,
    pub attempts: Vec<AttemptLog>,
    /// `|X ∩ Y|` for each member, for the returned attempt.
    pub per_y_counts: Vec<usize>,
    pub success: bool,
}

/// Runs up to `params.max_retries` attempts, attempt `a` drawing from
/// `rng.derive(a)`, and returns the first success or the last attempt.
pub fn build_coclique<P: Clone>(
    spec: &MeasurableGraphSpec<P>,
    params: &CocliqueParams,
    rng: &RngStream,
) -> CocliqueResult<P> {
    let mut log = Vec::new();
    let mut last = (Vec::new(), Vec::new());
    for attempt in 0..params.max_retries {
        let mut stream = rng.derive(attempt as u64);
        let z: Vec<P> = (0..params.m).map(|_| (spec.sampler)(&mut stream)).collect();
        let adjacency = edges_among(spec, &z);
        let edges: usize = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        if 2 * edges > params.m {
            log.push(AttemptLog {
                attempt,
                edges,
                deleted: 0,
                max_count: None,
                success: false,
            });
            last = (z, Vec::new());
            continue;
        }
        let keep = greedy_cover_deletion(adjacency);
        let x: Vec<P> = z.into_iter().zip(&keep).filter(|(_, &k)| k).map(|(p, _)| p).collect();
        let members: Vec<Vec<bool>> = spec.family.iter().map(|y| x.iter().map(y).collect()).collect();
        let counts: Vec<usize> = members.iter().map(|m| m.iter().filter(|&&b| b).count()).collect();
        let success = match params.acceptance {
            Acceptance::PerMemberThreshold => counts.iter().all(|&c| 2 * params.k * c < params.m),
            Acceptance::ExhaustiveNonCover => no_k_subset_covers(&members, &counts, x.len(), params.k),
        };
        log.push(AttemptLog {
            attempt,
            edges,
            deleted: params.m - x.len(),
            max_count: Some(counts.iter().copied().max().unwrap_or(0)),
            success,
        });
        if success {
            return CocliqueResult {
                points: x,
                params: *params,
                retries_used: attempt + 1,
                attempts: log,
                per_y_counts: counts,
                success: true,
            };
        }
        last = (x, counts);
    }
    CocliqueResult {
        points: last.0,
        params: *params,
        retries_used: params.max_retries,
        attempts: log,
        per_y_counts: last.1,
        success: false,
    }
}

fn edges_among<P>(spec: &MeasurableGraphSpec<P>, z: &[P]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); z.len()];
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if (spec.edge)(&z[i], &z[j]) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    adj
}

/// Repeatedly deletes a vertex of largest remaining degree (lowest index on
/// ties) until no edge is left. Returns the survivor mask.
fn greedy_cover_deletion(adjacency: Vec<Vec<usize>>) -> Vec<bool> {
    let mut keep = vec![true; adjacency.len()];
    let mut degree: Vec<usize> = adjacency.iter().map(Vec::len).collect();
    while let Some((best, &d)) = degree.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))) {
        if d == 0 {
            break;
        }
        keep[best] = false;
        degree[best] = 0;
        for &j in &adjacency[best] {
            if keep[j] {
                degree[j] -= 1;
            }
        }
    }
    keep
}

/// Whether every union of `k` members misses some point of `X`.
pub fn no_k_subset_covers(members: &[Vec<bool>], counts: &[usize], size: usize, k: usize) -> bool {
    if size == 0 {
        return false;
    }
    let f = members.len();
    if k >= f {
        return (0..size).any(|i| members.iter().all(|m| !m[i]));
    }
    if subsets_at_most(f, k, MAX_ENUMERATED_SUBSETS) {
        let words = size.div_ceil(64);
        let masks: Vec<Vec<u64>> = members
            .iter()
            .map(|m| {
                let mut w = vec![0u64; words];
                for (i, &b) in m.iter().enumerate() {
                    if b {
                        w[i / 64] |= 1 << (i % 64);
                    }
                }
                w
            })
            .collect();
        let mut full = vec![u64::MAX; words];
        if !size.is_multiple_of(64) {
            full[words - 1] = (1u64 << (size % 64)) - 1;
        }
        !any_cover(&masks, &full, k, 0, &vec![0u64; words])
    } else {
        counts.iter().all(|&c| k * c < size)
    }
}

fn any_cover(masks: &[Vec<u64>], full: &[u64], k: usize, start: usize, acc: &[u64]) -> bool {
    if k == 0 {
        return acc == full;
    }
    for i in start..=masks.len() - k {
        let next: Vec<u64> = acc.iter().zip(&masks[i]).map(|(a, b)| a | b).collect();
        if any_cover(masks, full, k - 1, i + 1, &next) {
            return true;
        }
    }
    false
}

fn subsets_at_most(f: usize, k: usize, limit: u64) -> bool {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (f as u128 - i) / (i + 1);
        if c > limit as u128 {
            return false;
        }
    }
    true
}
