//! `audit`: named invariant suites with a machine-readable failure list.

use std::f64::consts::{E, PI};

use covercert_core::bodies::Body;
use covercert_core::bounds::{
    borsuk_piece_bound, choose_alpha, cone_constants, cone_inclusion_breakpoint, ln_theorem_lower_bound,
    probe_cone_inclusion, proof_pipeline_budget, verify_cone_inclusion, verify_sweep_inequality, ConeSpec,
};
use covercert_core::coclique::{
    build_coclique, chernoff_bound, edge_measure_audit, exact_binomial_tail, CocliqueParams, CocliqueResult,
    MeasurableGraphSpec, Membership,
};
use covercert_core::geom_core::{cap_measure_bounds, cap_measure_exact, sample_uniform_sphere, Ball, Vector};
use covercert_core::isometry_nets::{
    audit_cover_family, build_cover_family, build_translation_cover, Isometry, IsometryNet, NetCertificate,
};
use covercert_core::RngStream;
use rand::Rng;
use serde::Serialize;

use crate::args::{AuditArgs, JungArgs, Suite};
use crate::output::canonical_json;
use crate::{jung, CliError, CliResult, Outcome};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct AuditReport {
    pub config: AuditArgs,
    pub checks: Vec<CheckResult>,
    /// Names of failed checks.
    pub failures: Vec<String>,
    pub pass: bool,
}

struct Ctx {
    suite: Suite,
    seed: u64,
    samples: Option<usize>,
    fault: bool,
    checks: Vec<CheckResult>,
}

impl Ctx {
    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            suite: self.suite,
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn samples(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    fn rng(&self, stream: u64) -> RngStream {
        RngStream::new(self.seed, stream)
    }
}

fn caps(ctx: &mut Ctx) -> CliResult<()> {
    let mut worst = 0usize;
    for n in 2..=100usize {
        for i in 1..=50 {
            let alpha = 0.05 + (PI / 2.0 - 0.1) * i as f64 / 51.0;
            let m = cap_measure_exact(n, alpha)?;
            let b = cap_measure_bounds(n, alpha)?;
            if !(b.lower < m && m < b.upper) {
                worst += 1;
            }
        }
    }
    ctx.push("sandwich_grid", worst == 0, format!("{worst} of 4950 grid points violate"));
    let samples = ctx.samples(200_000);
    for (idx, (n, alpha)) in [(3usize, PI / 3.0), (10, 1.0)].into_iter().enumerate() {
        let m = cap_measure_exact(n, alpha)?;
        let mut rng = ctx.rng(idx as u64);
        let cos_a = alpha.cos();
        let hits = (0..samples)
            .map(|_| sample_uniform_sphere(n, &mut rng))
            .filter(|y| y.as_ref().is_ok_and(|y| y.coords()[0] >= cos_a))
            .count();
        let freq = hits as f64 / samples as f64;
        let sigma = (m * (1.0 - m) / samples as f64).sqrt();
        ctx.push(
            format!("sphere_mc_n{n}"),
            (freq - m).abs() <= 3.0 * sigma,
            format!("frequency {freq}, exact {m}, sigma {sigma}"),
        );
    }
    Ok(())
}

fn jung_suite(ctx: &mut Ctx) -> CliResult<()> {
    for n in [1usize, 2, 3, 6, 10] {
        let args = JungArgs {
            n,
            seed: ctx.seed,
            samples: ctx.samples(100),
            points: None,
            tol: 1e-6,
            out: None,
        };
        let out = jung::run(&args)?;
        ctx.push(format!("jung_n{n}"), out.pass, format!("dimension {n}"));
    }
    Ok(())
}

fn chernoff(ctx: &mut Ctx) -> CliResult<()> {
    let mut bad = 0;
    let mut checked = 0;
    for m in 1..=200usize {
        for k in 1..=5usize {
            for i in 1..=40 {
                let p = 0.0025 * i as f64;
                if 2.0 * E * k as f64 * p >= 1.0 {
                    continue;
                }
                checked += 1;
                if exact_binomial_tail(m, p, m.div_ceil(2 * k)) >= chernoff_bound(m, k, p) {
                    bad += 1;
                }
            }
        }
    }
    ctx.push("dominance_grid", bad == 0, format!("{bad} violations in {checked} cells"));
    Ok(())
}

fn sweep(ctx: &mut Ctx) -> CliResult<()> {
    let rep = verify_sweep_inequality(ctx.samples(1000), &mut ctx.rng(0));
    ctx.push(
        "sweep_inequality",
        rep.violations == 0,
        format!("{} violations in {} trials, max ratio {}", rep.violations, rep.trials, rep.max_ratio),
    );
    Ok(())
}

fn cone(ctx: &mut Ctx) -> CliResult<()> {
    let probes = ctx.samples(2000);
    let mut rng = ctx.rng(0);
    for n in [2usize, 3] {
        for alpha in [0.3, PI / 3.0, 1.3] {
            for l in [0.5, 1.0, 2.0] {
                let mut axis = vec![0.0; n];
                axis[n - 1] = 1.0;
                let cone = ConeSpec::new(Vector::zeros(n), Vector::new(axis)?, alpha, l)?;
                let eps0 = cone_constants(alpha, l)?.eps0;
                let cell = if ctx.fault {
                    // Past the exact breakpoint the inclusion fails.
                    let eps = 1.5 * cone_inclusion_breakpoint(alpha, l)?;
                    (eps, probe_cone_inclusion(&cone, eps, probes, &mut rng)?)
                } else {
                    let eps = 0.99 * eps0;
                    (eps, verify_cone_inclusion(&cone, eps, probes, &mut rng)?)
                };
                ctx.push(
                    format!("cone_n{n}_a{alpha:.4}_l{l}"),
                    cell.1.violations == 0,
                    format!("eps {}, eps0 {eps0}, {} violations", cell.0, cell.1.violations),
                );
            }
        }
    }
    Ok(())
}

fn edges(ctx: &mut Ctx) -> CliResult<()> {
    let samples = ctx.samples(20_000);
    let mut rng = ctx.rng(0);
    for n in 2..=8usize {
        for alpha in [0.8, 1.0, 1.2, 1.4] {
            let rep = edge_measure_audit(n, alpha, 5, samples, &mut rng)?;
            let worst = rep.anchors.iter().map(|a| a.far_fraction).fold(0.0, f64::max);
            ctx.push(
                format!("edges_n{n}_a{alpha}"),
                rep.pass && rep.anchors[0].far_fraction == 0.0,
                format!("worst far fraction {worst}, cap measure {}", rep.cap_measure),
            );
        }
    }
    Ok(())
}

/// Points of `[0, 1]`, far pairs at distance above 0.9, and ten intervals
/// `[i/10, i/10 + 0.05]`.
pub fn unit_interval_benchmark() -> MeasurableGraphSpec<f64> {
    let intervals: Vec<(f64, f64)> = (0..10).map(|i| (0.1 * i as f64, 0.1 * i as f64 + 0.05)).collect();
    MeasurableGraphSpec {
        sampler: Box::new(|rng: &mut RngStream| rng.random::<f64>()),
        edge: Box::new(|x: &f64, y: &f64| (x - y).abs() > 0.9),
        labels: (0..intervals.len()).map(|i| format!("I{i}")).collect(),
        family: intervals
            .into_iter()
            .map(|(a, b)| -> Membership<f64> { Box::new(move |x: &f64| a <= *x && *x <= b) })
            .collect(),
    }
}

/// Parameters of [`unit_interval_benchmark`]: `M = 50`, `k = 1`, `p = 0.05`.
pub fn unit_interval_params() -> CliResult<CocliqueParams> {
    Ok(CocliqueParams::new(50, 1, 0.05)?)
}

fn interval_result_ok(res: &CocliqueResult<f64>, m: usize, k: usize) -> bool {
    let xs = &res.points;
    let coclique = xs.iter().enumerate().all(|(i, a)| xs[i + 1..].iter().all(|b| (a - b).abs() <= 0.9));
    let counts: Vec<usize> = (0..10)
        .map(|i| {
            let a = 0.1 * i as f64;
            xs.iter().filter(|&&x| a <= x && x <= a + 0.05).count()
        })
        .collect();
    res.success && coclique && 2 * xs.len() >= m && counts.iter().all(|&c| 2 * k * c < m) && counts == res.per_y_counts
}

fn coclique(ctx: &mut Ctx) -> CliResult<()> {
    let spec = unit_interval_benchmark();
    let params = unit_interval_params()?;
    let runs = ctx.samples(100);
    let mut bad = 0;
    let mut max_retries = 0;
    for s in 0..runs {
        let res = build_coclique(&spec, &params, &ctx.rng(s as u64));
        max_retries = max_retries.max(res.retries_used);
        if !interval_result_ok(&res, params.m, params.k) {
            bad += 1;
        }
    }
    ctx.push(
        "unit_interval",
        bad == 0,
        format!("{bad} of {runs} runs failed; most retries {max_retries}"),
    );
    Ok(())
}

fn cover(ctx: &mut Ctx) -> CliResult<()> {
    let a = Vector::zeros(2);
    let b = Vector::basis(2, 0);
    let k = Body::segment(&a, &b)?;
    let v = Ball::centered(2, 1.0)?;
    let eps = 0.2;
    let family = if ctx.fault {
        let t = build_translation_cover(&v, eps / 2.0)?;
        IsometryNet {
            dim: 2,
            delta: eps / 2.0,
            elements: t.into_iter().map(Isometry::translation_by).collect(),
            certificate: NetCertificate::Deterministic,
        }
    } else {
        build_cover_family(&k, 1.0, &v, eps, &mut ctx.rng(0))?
    };
    let trials = ctx.samples(300);
    let rep = audit_cover_family(&family, &k, &[a, b], &v, eps, trials, &ctx.rng(1))?;
    ctx.push(
        "segment_family",
        rep.failures == 0,
        format!(
            "{} members, {} of {} placements uncovered",
            family.len(),
            rep.failures,
            rep.trials
        ),
    );
    Ok(())
}

fn bounds(ctx: &mut Ctx) -> CliResult<()> {
    let mut bad = Vec::new();
    for n in [2usize, 10, 100, 1000, 10_000, 100_000, 1_000_000] {
        let mut finite = ln_theorem_lower_bound(n)?.is_finite() && borsuk_piece_bound(n)?.ln_bound.is_finite();
        finite &= proof_pipeline_budget(n)?.quantities.values().all(|x| x.is_finite());
        finite &= choose_alpha(n, 2.6)?.quantities.values().all(|x| x.is_finite());
        if !finite {
            bad.push(n);
        }
    }
    ctx.push("log_space_finite", bad.is_empty(), format!("non-finite at {bad:?}"));
    let flagged = !choose_alpha(1000, 2.5)?.checks["lambda_above_threshold"];
    ctx.push("lambda_boundary", flagged, "λ = 2.5 must be flagged");
    Ok(())
}

fn run_suite(ctx: &mut Ctx, suite: Suite) -> CliResult<()> {
    ctx.suite = suite;
    match suite {
        Suite::Caps => caps(ctx),
        Suite::Jung => jung_suite(ctx),
        Suite::Chernoff => chernoff(ctx),
        Suite::Sweep => sweep(ctx),
        Suite::Cone => cone(ctx),
        Suite::Edges => edges(ctx),
        Suite::Coclique => coclique(ctx),
        Suite::Cover => cover(ctx),
        Suite::Bounds => bounds(ctx),
        Suite::All => {
            for s in [
                Suite::Caps,
                Suite::Jung,
                Suite::Chernoff,
                Suite::Sweep,
                Suite::Cone,
                Suite::Edges,
                Suite::Coclique,
                Suite::Cover,
                Suite::Bounds,
            ] {
                run_suite(ctx, s)?;
            }
            Ok(())
        }
    }
}

pub fn audit(args: &AuditArgs) -> CliResult<AuditReport> {
    if args.fault_injection && !matches!(args.suite, Suite::Cone | Suite::Cover | Suite::All) {
        return Err(CliError::Config(format!(
            "suite {:?} has no fault injection; use cone, cover or all",
            args.suite
        )));
    }
    let mut ctx = Ctx {
        suite: args.suite,
        seed: args.seed,
        samples: args.samples,
        fault: args.fault_injection,
        checks: Vec::new(),
    };
    run_suite(&mut ctx, args.suite)?;
    let failures: Vec<String> = ctx
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{:?}/{}", c.suite, c.name).to_lowercase())
        .collect();
    Ok(AuditReport {
        config: args.clone(),
        pass: failures.is_empty(),
        failures,
        checks: ctx.checks,
    })
}

/// Exit status follows the report, inverted under `--expect-fail`.
pub fn run(args: &AuditArgs) -> CliResult<Outcome> {
    let report = audit(args)?;
    Ok(Outcome {
        pass: report.pass != args.expect_fail,
        body: canonical_json(&report)?,
    })
}
