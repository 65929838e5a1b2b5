//! `witness` and `verify`: a finite set of diameter at most the edge
//! threshold that no `k` members of a cover family contain, together with a
//! certificate that can be rechecked from its JSON alone.
//!
//! Pipeline: a family `T` with every placement of the body meeting `rB_n`
//! inside some `g(K_ε)`; members `Y = g(K_ε)`; Monte Carlo estimates of
//! `p = max ν(Y)` and of the far-pair measure; the coclique search; and a
//! direct check of the result. Only the direct check decides the verdict.

use std::path::Path;

use covercert_core::bodies::{Body, BodySpec};
use covercert_core::coclique::{
    build_coclique, check_hypotheses, edge_threshold, geometric_spec, no_k_subset_covers, Acceptance, AttemptLog,
    CocliqueParams, HypothesisReport,
};
use covercert_core::geom_core::{diameter, jung_radius, min_enclosing_ball, sample_in_ball, Ball, PointSet, Vector};
use covercert_core::isometry_nets::{build_cover_family, IsometryNet};
use covercert_core::RngStream;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::{VerifyArgs, WitnessArgs};
use crate::output::{canonical_json, SCHEMA_VERSION};
use crate::{CliError, CliResult, Outcome};

const STREAM_FAMILY: u64 = 1;
const STREAM_OVERLAP: u64 = 2;
const STREAM_EDGES: u64 = 3;
const STREAM_COCLIQUE: u64 = 4;
const MEB_TOL: f64 = 1e-9;
const THRESHOLD_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyManifest {
    /// The body before thickening.
    pub base: BodySpec,
    pub eps: f64,
    /// Members are `g(base + eps B_n)` for `g` in the net.
    pub net: IsometryNet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub alpha: f64,
    pub r: f64,
    pub r_n: f64,
    pub diameter_bound: f64,
    pub v_radius: f64,
    pub family_size: usize,
    /// Largest estimated `ν(Y)` over members, and the member attaining it.
    pub p_estimate: f64,
    pub p_member: usize,
    pub edge_measure_estimate: f64,
    pub hypotheses: HypothesisReport,
    pub hypotheses_pass: bool,
    pub coclique_success: bool,
    pub retries_used: usize,
    pub attempts: Vec<AttemptLog>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub environment: WitnessArgs,
    pub points: PointSet,
    pub diam_x: f64,
    /// Declared bound on `diam X`.
    pub threshold: f64,
    pub enclosing_radius: f64,
    pub family: FamilyManifest,
    pub per_member_counts: Vec<usize>,
    pub k: usize,
    pub verdict: bool,
    pub diagnostics: Diagnostics,
}

/// Directly checked facts about a point set and a family.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Facts {
    pub diameter: f64,
    pub counts: Vec<usize>,
    pub non_cover: bool,
}

fn workers(jobs: usize) -> usize {
    std::thread::available_parallelism().map_or(1, |w| w.get()).clamp(1, jobs.max(1))
}

/// Order-preserving parallel map over contiguous chunks.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let chunk = items.len().div_ceil(workers(items.len())).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

fn members(base: &Body, eps: f64, net: &IsometryNet) -> CliResult<Vec<Body>> {
    let thick = base.thicken(eps)?;
    Ok(net.elements.iter().map(|g| thick.transform(g)).collect::<Result<_, _>>()?)
}

/// Diameter, per-member counts and `k`-subset non-coverage of `points`.
pub fn check_facts(points: &PointSet, family: &[Body], k: usize) -> CliResult<Facts> {
    let membership: Vec<Vec<bool>> = par_map(family, |y| {
        points
            .iter()
            .map(|p| y.contains(p).unwrap_or(false))
            .collect::<Vec<bool>>()
    });
    let counts: Vec<usize> = membership.iter().map(|m| m.iter().filter(|&&b| b).count()).collect();
    let diameter = if points.is_empty() { 0.0 } else { diameter(points)? };
    let non_cover = no_k_subset_covers(&membership, &counts, points.len(), k);
    Ok(Facts {
        diameter,
        counts,
        non_cover,
    })
}

fn load_body(args: &WitnessArgs) -> CliResult<Body> {
    let body = match &args.body {
        Some(path) => {
            let spec: BodySpec = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            spec.build()?
        }
        None => Body::ball(Ball::centered(args.n, args.body_radius)?),
    };
    if body.dim() != args.n {
        return Err(CliError::Config(format!(
            "body has dimension {}, expected {}",
            body.dim(),
            args.n
        )));
    }
    Ok(body)
}

fn resolve_alpha(args: &WitnessArgs) -> CliResult<f64> {
    match args.alpha {
        Some(a) => Ok(a),
        None => {
            let c = 1.0 / (2.0 * args.r);
            let alpha = 2.0 * c.acos();
            if !(c <= 1.0 && alpha > 0.0 && alpha < std::f64::consts::FRAC_PI_2) {
                return Err(CliError::Config(format!(
                    "no default angle for r = {}: need 1/2 < r < 1/√2",
                    args.r
                )));
            }
            Ok(alpha)
        }
    }
}

fn declared_threshold(r: f64, alpha: f64, unit_diameter: bool) -> f64 {
    let t = edge_threshold(r, alpha);
    if unit_diameter {
        t.min(1.0)
    } else {
        t
    }
}

/// Largest fraction of `samples` common points of `rB_n` inside a member.
fn max_overlap(family: &[Body], window: &Ball, samples: usize, rng: &mut RngStream) -> (f64, usize) {
    let probes: Vec<Vector> = (0..samples).map(|_| sample_in_ball(window, rng)).collect();
    let hits = par_map(family, |y| {
        if y.bound().center.dist(&window.center) > y.bound().radius + window.radius {
            return 0;
        }
        probes.iter().filter(|p| y.contains(p).unwrap_or(false)).count()
    });
    let (best, &h) = hits
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .unwrap_or((0, &0));
    (h as f64 / samples as f64, best)
}

fn far_pair_fraction(window: &Ball, threshold: f64, samples: usize, rng: &mut RngStream) -> f64 {
    let far = (0..samples)
        .filter(|_| sample_in_ball(window, rng).dist(&sample_in_ball(window, rng)) >= threshold)
        .count();
    far as f64 / samples as f64
}

pub fn build_witness(args: &WitnessArgs) -> CliResult<WitnessCertificate> {
    let n = args.n;
    if !(2..=3).contains(&n) {
        return Err(CliError::Config(format!("witness search needs n in {{2, 3}}, got {n}")));
    }
    if args.samples < 100 {
        return Err(CliError::Config("samples must be at least 100".into()));
    }
    if args.m == 0 || args.max_retries == 0 {
        return Err(CliError::Config("m and max-retries must be positive".into()));
    }
    let body = load_body(args)?;
    let alpha = resolve_alpha(args)?;
    let threshold = declared_threshold(args.r, alpha, args.unit_diameter);
    let root = RngStream::new(args.seed, 0);
    let d = body.diameter_bound();
    let v_radius = args.v_radius.unwrap_or(args.r + d);
    let v = Ball::centered(n, v_radius)?;
    let net = build_cover_family(&body, d, &v, args.eps, &mut root.derive(STREAM_FAMILY))?;
    let family = members(&body, args.eps, &net)?;
    let window = Ball::centered(n, args.r)?;
    let (p_hat, p_member) = max_overlap(&family, &window, args.samples, &mut root.derive(STREAM_OVERLAP));
    let edge_hat = far_pair_fraction(&window, threshold, args.samples, &mut root.derive(STREAM_EDGES));
    let p = p_hat.max(1.0 / args.samples as f64);
    let params = CocliqueParams::new(args.m, args.k, p)?
        .with_retries(args.max_retries)
        .with_acceptance(Acceptance::ExhaustiveNonCover);
    let hypotheses = check_hypotheses(&params, family.len(), &[p_hat], edge_hat);
    let spec = geometric_spec(n, args.r, alpha, family.clone(), args.unit_diameter)?;
    let result = build_coclique(&spec, &params, &root.derive(STREAM_COCLIQUE));
    let points = PointSet::new(n, result.points)?;
    let facts = check_facts(&points, &family, args.k)?;
    let enclosing_radius = if points.is_empty() {
        0.0
    } else {
        min_enclosing_ball(&points, MEB_TOL)?.radius
    };
    let verdict = !points.is_empty() && facts.diameter <= threshold && facts.non_cover;
    Ok(WitnessCertificate {
        environment: args.clone(),
        points,
        diam_x: facts.diameter,
        threshold,
        enclosing_radius,
        family: FamilyManifest {
            base: BodySpec::from(&body),
            eps: args.eps,
            net,
        },
        per_member_counts: facts.counts,
        k: args.k,
        verdict,
        diagnostics: Diagnostics {
            alpha,
            r: args.r,
            r_n: jung_radius(n)?,
            diameter_bound: d,
            v_radius,
            family_size: family.len(),
            p_estimate: p_hat,
            p_member,
            edge_measure_estimate: edge_hat,
            hypotheses_pass: hypotheses.all_pass(),
            hypotheses,
            coclique_success: result.success,
            retries_used: result.retries_used,
            attempts: result.attempts,
        },
    })
}

pub fn run(args: &WitnessArgs) -> CliResult<Outcome> {
    let cert = build_witness(args)?;
    Ok(Outcome {
        pass: cert.verdict,
        body: canonical_json(&cert)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub claimed_verdict: bool,
    pub verdict: bool,
    pub points: usize,
    pub members: usize,
    pub diameter: f64,
    pub diameter_matches: bool,
    pub threshold_matches: bool,
    pub counts_match: bool,
    pub non_cover: bool,
    /// Every recorded fact agrees with its recomputation.
    pub consistent: bool,
}

/// Rechecks diameter, threshold, memberships and non-coverage.
pub fn verify_certificate(cert: &WitnessCertificate) -> CliResult<VerifyReport> {
    let base = cert.family.base.build()?;
    let family = members(&base, cert.family.eps, &cert.family.net)?;
    let facts = check_facts(&cert.points, &family, cert.k)?;
    let env = &cert.environment;
    let threshold_matches = (declared_threshold(env.r, cert.diagnostics.alpha, env.unit_diameter) - cert.threshold)
        .abs()
        <= THRESHOLD_TOL
        && (!env.unit_diameter || cert.threshold <= 1.0);
    let diameter_matches = facts.diameter == cert.diam_x;
    let counts_match = facts.counts == cert.per_member_counts;
    let verdict = !cert.points.is_empty() && facts.diameter <= cert.threshold && facts.non_cover;
    let consistent = threshold_matches && diameter_matches && counts_match && verdict == cert.verdict;
    Ok(VerifyReport {
        claimed_verdict: cert.verdict,
        verdict,
        points: cert.points.len(),
        members: family.len(),
        diameter: facts.diameter,
        diameter_matches,
        threshold_matches,
        counts_match,
        non_cover: facts.non_cover,
        consistent,
    })
}

pub fn parse_certificate(text: &str) -> CliResult<WitnessCertificate> {
    let value: Value = serde_json::from_str(text)?;
    match value.get("schema_version").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => {}
        other => {
            return Err(CliError::Config(format!(
                "unsupported schema_version {other:?}, expected {SCHEMA_VERSION}"
            )))
        }
    }
    Ok(serde_json::from_value(value)?)
}

pub fn verify_file(path: &Path) -> CliResult<VerifyReport> {
    verify_certificate(&parse_certificate(&std::fs::read_to_string(path)?)?)
}

pub fn run_verify(args: &VerifyArgs) -> CliResult<Outcome> {
    let report = verify_file(&args.certificate)?;
    #[derive(Serialize)]
    struct Out<'a> {
        config: &'a VerifyArgs,
        report: &'a VerifyReport,
    }
    Ok(Outcome {
        pass: report.consistent && report.verdict,
        body: canonical_json(&Out {
            config: args,
            report: &report,
        })?,
    })
}
