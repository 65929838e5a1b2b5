//! Finite families of isometries covering every congruent placement.
//!
//! With `K ∋ 0`, `diam K ≤ D`, `f = (A, v)` and `g = (B, w)` we have
//! `|f(x) - g(x)| ≤ D‖A - B‖_op + ‖v - w‖` on `K`, so an `ε/2D`-net in
//! `O(n)` combined with an `ε/2`-covering of translations puts every
//! `f(K)` inside some `g(K + εB_n)`.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::nets::{build_orthogonal_net, build_translation_cover, IsometryNet, NetCertificate};
use super::{frobenius_sq, iso_distance_surrogate, random_orthogonal, Isometry};
use crate::bodies::Body;
use crate::error::{invalid, Error, Result};
use crate::geom_core::{sample_in_ball, Ball, Vector};
use crate::RngStream;

const MAX_FAMILY_SIZE: usize = 20_000_000;
const MAX_REPORTED_FAILURES: usize = 16;

/// Trial index, failure if any, nearest-member distance.
type TrialOutcome = (usize, Option<CoverFailure>, f64);

/// `ln(2 N (500 D/ε)^{n(n-1)/2})` for a translation covering of size `N`.
pub fn ln_cover_family_bound(n: usize, translations: usize, d: f64, eps: f64) -> f64 {
    let k = (n * n.saturating_sub(1)) as f64 / 2.0;
    (2.0 * translations as f64).ln() + k * (500.0 * d / eps).ln()
}

/// Family `T` such that every `AK + v` with `A ∈ O(n)`, `v ∈ V` lies in
/// `g(K_ε)` for some `g ∈ T`.
///
/// Rotations form an `ε/2D`-net, replaced by the identity when `K` is
/// rotation-invariant. Translations form a `min(ε/2D, ε/2)`-covering of `V`.
pub fn build_cover_family<R: Rng + ?Sized>(
    k: &Body,
    d: f64,
    v: &Ball,
    eps: f64,
    rng: &mut R,
) -> Result<IsometryNet> {
    let n = k.dim();
    v.center.check_dim(n)?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(invalid("eps", format!("must be positive, got {eps}")));
    }
    if !(d > 0.0 && d.is_finite()) {
        return Err(invalid("d", format!("must be positive, got {d}")));
    }
    if !k.contains(&Vector::zeros(n))? {
        return Err(Error::OriginNotContained);
    }
    let delta = eps / (2.0 * d);
    let rotations = if k.is_rotation_invariant() || delta >= 2.0 {
        IsometryNet {
            dim: n,
            delta: 0.0,
            elements: vec![Isometry::identity(n)],
            certificate: NetCertificate::Deterministic,
        }
    } else {
        build_orthogonal_net(n, delta, rng)?
    };
    let rho = delta.min(eps / 2.0);
    let translations = build_translation_cover(v, rho)?;
    let total = rotations.len().saturating_mul(translations.len());
    if total > MAX_FAMILY_SIZE {
        return Err(invalid("eps", format!("family of {total} isometries is too large")));
    }
    let mut elements = Vec::with_capacity(total);
    for r in &rotations.elements {
        for t in &translations {
            elements.push(Isometry::from_parts(r.matrix().clone(), t.clone()));
        }
    }
    Ok(IsometryNet {
        dim: n,
        delta: rotations.delta.max(0.0) + rho,
        elements,
        certificate: rotations.certificate,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverFailure {
    pub trial: usize,
    pub placement: Isometry,
    /// Surrogate distance from the placement to the nearest family member.
    pub nearest: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverAuditReport {
    pub trials: usize,
    pub failures: usize,
    /// Worst nearest-member surrogate distance over all trials.
    pub max_nearest: f64,
    /// The first few failing placements.
    pub examples: Vec<CoverFailure>,
}

/// Randomized check of the covering guarantee.
///
/// Trial `t` draws a Haar `A` and a uniform `v ∈ V` from `rng.derive(t)`
/// and passes if some `g ∈ T` has `g⁻¹(Ap + v) ∈ K_ε` for every probe `p`.
/// Probes should be points of `K` whose hull contains it, such as the
/// vertices of a polytope.
pub fn audit_cover_family(
    family: &IsometryNet,
    k: &Body,
    probes: &[Vector],
    v: &Ball,
    eps: f64,
    trials: usize,
    rng: &RngStream,
) -> Result<CoverAuditReport> {
    let n = k.dim();
    if family.dim != n || family.is_empty() {
        return Err(invalid("family", "must be nonempty and match the body dimension"));
    }
    if trials == 0 {
        return Err(invalid("trials", "must be at least 1"));
    }
    if probes.is_empty() {
        return Err(invalid("probes", "must be nonempty"));
    }
    for p in probes {
        p.check_dim(n)?;
    }
    v.center.check_dim(n)?;
    let k_eps = k.thicken(eps)?;
    let workers = std::thread::available_parallelism().map_or(1, |w| w.get()).min(trials);
    let outcomes: Vec<Result<Vec<TrialOutcome>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let k_eps = &k_eps;
                s.spawn(move || {
                    (w..trials)
                        .step_by(workers)
                        .map(|t| audit_trial(family, k_eps, probes, v, t, &mut rng.derive(t as u64)))
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("audit worker panicked")).collect()
    });
    let mut rows = Vec::with_capacity(trials);
    for o in outcomes {
        rows.extend(o?);
    }
    rows.sort_by_key(|r| r.0);
    let max_nearest = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let failed: Vec<CoverFailure> = rows.into_iter().filter_map(|r| r.1).collect();
    Ok(CoverAuditReport {
        trials,
        failures: failed.len(),
        max_nearest,
        examples: failed.into_iter().take(MAX_REPORTED_FAILURES).collect(),
    })
}

fn audit_trial(
    family: &IsometryNet,
    k_eps: &Body,
    probes: &[Vector],
    v: &Ball,
    trial: usize,
    rng: &mut RngStream,
) -> Result<(usize, Option<CoverFailure>, f64)> {
    let n = k_eps.dim();
    let a = random_orthogonal(n, rng);
    let shift = sample_in_ball(v, rng);
    let f = Isometry::from_parts(a, shift);
    let images: Vec<Vector> = probes.iter().map(|p| f.apply(p)).collect();
    let mut order: Vec<(f64, usize)> = family
        .elements
        .iter()
        .enumerate()
        .map(|(i, g)| (rough_distance(f.matrix(), f.translation(), g), i))
        .collect();
    order.sort_by(|x, y| x.0.total_cmp(&y.0));
    let nearest = iso_distance_surrogate(&f, &family.elements[order[0].1])?;
    for (_, i) in &order {
        let g = &family.elements[*i];
        let mut inside = true;
        for q in &images {
            if !k_eps.contains(&g.apply_inverse(q))? {
                inside = false;
                break;
            }
        }
        if inside {
            return Ok((trial, None, nearest));
        }
    }
    Ok((
        trial,
        Some(CoverFailure {
            trial,
            placement: f,
            nearest,
        }),
        nearest,
    ))
}

fn rough_distance(a: &DMatrix<f64>, v: &Vector, g: &Isometry) -> f64 {
    frobenius_sq(a, g.matrix()).sqrt() + v.dist(g.translation())
}
