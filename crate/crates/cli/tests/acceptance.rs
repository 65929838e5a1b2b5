//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Each criterion recomputes its reference values here,
//! independently of the library code under test where practical.

use std::f64::consts::{E, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use covercert::args::WitnessArgs;
use covercert::audit::{unit_interval_benchmark, unit_interval_params};
use covercert::jung::regular_simplex;
use covercert::witness::{build_witness, parse_certificate, run as run_witness, verify_certificate};
use covercert_core::bodies::Body;
use covercert_core::bounds::{
    borsuk_piece_bound, choose_alpha, cone_constants, cone_inclusion_breakpoint, ln_theorem_lower_bound,
    main_inequality, probe_cone_inclusion, proof_pipeline_budget, sweep_set_1d, theorem_lower_bound,
    verify_cone_inclusion, verify_sweep_inequality, ConeSpec, IntervalUnion,
};
use covercert_core::coclique::{
    build_coclique, check_hypotheses, chernoff_bound, edge_measure_audit, exact_binomial_tail,
};
use covercert_core::geom_core::{
    cap_measure_exact, jung_radius, ln_cap_measure_bounds, ln_cap_measure_exact, min_enclosing_ball, PointSet,
    Vector,
};
use covercert_core::isometry_nets::{
    audit_cover_family, build_cover_family, build_translation_cover, Isometry, IsometryNet, NetCertificate,
};
use covercert_core::RngStream;
use rand::Rng;
use rand_distr::StandardNormal;
use statrs::function::gamma::{gamma, ln_gamma};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

/// `m(α) = ∫₀^α sin^{n-2} / ∫₀^π sin^{n-2}` by composite Simpson.
fn cap_oracle(n: usize, alpha: f64) -> f64 {
    let integral = |b: f64| {
        let steps = 20_000;
        let h = b / steps as f64;
        let f = |t: f64| t.sin().powi(n as i32 - 2);
        let mut s = f(0.0) + f(b);
        for i in 1..steps {
            s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    };
    integral(alpha) / integral(PI)
}

fn gaussian_unit(n: usize, rng: &mut RngStream) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn criterion_1() -> Verdict {
    let mut violations = 0;
    let mut mismatch = 0.0f64;
    let mut cells = 0;
    for n in 2..=100usize {
        for i in 1..=50 {
            let alpha = 0.05 + (PI / 2.0 - 0.1) * i as f64 / 51.0;
            let ln_m = ln_cap_measure_exact(n, alpha).unwrap();
            let nf = n as f64;
            let ln_sin = (nf - 1.0) * alpha.sin().ln();
            let lower = ln_sin - 0.5 * (2.0 * PI * nf).ln();
            let upper = ln_sin - 0.5 * (2.0 * PI * (nf - 1.0)).ln() - alpha.cos().ln();
            let b = ln_cap_measure_bounds(n, alpha).unwrap();
            if !(lower < ln_m && ln_m < upper) || (b.lower - lower).abs() > 1e-12 || (b.upper - upper).abs() > 1e-12
            {
                violations += 1;
            }
            mismatch = mismatch.max((ln_m.exp() / cap_oracle(n, alpha) - 1.0).abs());
            cells += 1;
        }
    }
    let samples = 1_000_000;
    let mut mc = Vec::new();
    for (idx, (n, alpha)) in [(3usize, PI / 3.0), (10, 1.0)].into_iter().enumerate() {
        let mut rng = RngStream::new(101, idx as u64);
        let c = alpha.cos();
        let hits = (0..samples).filter(|_| gaussian_unit(n, &mut rng)[0] >= c).count();
        let m = cap_measure_exact(n, alpha).unwrap();
        let freq = hits as f64 / samples as f64;
        let sigma = (m * (1.0 - m) / samples as f64).sqrt();
        mc.push(((freq - m).abs() / sigma, n));
    }
    let exact_n3 = (cap_measure_exact(3, PI / 3.0).unwrap() - 0.25).abs();
    let pass = violations == 0 && mismatch < 1e-8 && exact_n3 < 1e-14 && mc.iter().all(|&(z, _)| z <= 3.0);
    verdict(
        pass,
        format!(
            "cap sandwich: {violations}/{cells} violations, quadrature rel err {mismatch:.1e}, \
             MC |z| = {:.2} (n=3), {:.2} (n=10)",
            mc[0].0, mc[1].0
        ),
    )
}

fn criterion_2() -> Verdict {
    let mut worst = 0.0f64;
    for n in 1..=10usize {
        let s = regular_simplex(n).unwrap();
        let pts = s.points();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                assert!((pts[i].dist(&pts[j]) - 1.0).abs() < 1e-12);
            }
        }
        let r = min_enclosing_ball(&s, 1e-9).unwrap().radius;
        let nf = n as f64;
        worst = worst.max((r - (nf / (2.0 * nf + 2.0)).sqrt()).abs());
    }
    let r6 = (6.0f64 / 14.0).sqrt();
    let mut rng = RngStream::new(202, 0);
    let mut over = 0;
    let mut max_radius = 0.0f64;
    let mut uncovered = 0;
    for _ in 0..1000 {
        let size = rng.random_range(2..=30);
        let raw: Vec<Vec<f64>> = (0..size)
            .map(|_| (0..6).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let mut d = 0.0f64;
        for i in 0..size {
            for j in i + 1..size {
                d = d.max(dist(&raw[i], &raw[j]));
            }
        }
        let scaled: Vec<Vector> = raw
            .iter()
            .map(|p| Vector::new(p.iter().map(|x| x / d).collect()).unwrap())
            .collect();
        let ball = min_enclosing_ball(&PointSet::new(6, scaled.clone()).unwrap(), 1e-9).unwrap();
        if scaled.iter().any(|p| p.dist(&ball.center) > ball.radius + 1e-9) {
            uncovered += 1;
        }
        max_radius = max_radius.max(ball.radius);
        if ball.radius > r6 + 1e-6 {
            over += 1;
        }
    }
    verdict(
        worst <= 1e-6 && over == 0 && uncovered == 0,
        format!(
            "Jung: simplex max error {worst:.1e} (n=1..10); 1000 clouds n=6, max radius {max_radius:.6} \
             vs r_6 = {r6:.6}, {over} over, {uncovered} balls not enclosing"
        ),
    )
}

/// `P(Bin(M, p) ≥ t)` by direct summation of log-space terms.
fn tail_oracle(m: usize, p: f64, t: usize) -> f64 {
    let lf = |x: usize| ln_gamma(x as f64 + 1.0);
    (t..=m)
        .map(|j| (lf(m) - lf(j) - lf(m - j) + j as f64 * p.ln() + (m - j) as f64 * (1.0 - p).ln()).exp())
        .sum()
}

fn criterion_3() -> Verdict {
    let mut cells = 0;
    let mut violations = 0;
    let mut worst_oracle = 0.0f64;
    for m in 1..=200usize {
        for k in 1..=5usize {
            for i in 1..=100 {
                let p = 0.001 * i as f64;
                if 2.0 * E * k as f64 * p >= 1.0 {
                    continue;
                }
                cells += 1;
                let t = m.div_ceil(2 * k);
                let exact = exact_binomial_tail(m, p, t);
                let bound = chernoff_bound(m, k, p);
                let direct_bound = (2.0 * E * k as f64 * p).powf(m as f64 / (2.0 * k as f64));
                if exact >= bound || (bound / direct_bound - 1.0).abs() > 1e-10 {
                    violations += 1;
                }
                let o = tail_oracle(m, p, t);
                if o > 1e-280 {
                    worst_oracle = worst_oracle.max((exact / o - 1.0).abs());
                }
            }
        }
    }
    verdict(
        violations == 0 && worst_oracle < 1e-9,
        format!("Chernoff dominance: {violations} violations in {cells} cells, tail oracle rel err {worst_oracle:.1e}"),
    )
}

/// `{x : x + [h₁, h₂] ⊂ I}` over the intervals of a normalized union.
fn sweep_oracle(u: &[(f64, f64)], h1: f64, h2: f64) -> Vec<(f64, f64)> {
    u.iter()
        .filter(|(a, b)| b - a >= h2 - h1)
        .map(|(a, b)| (a - h1, b - h2))
        .collect()
}

fn outside_length(t: &[(f64, f64)], u: &[(f64, f64)]) -> f64 {
    t.iter()
        .map(|&(a, b)| {
            let inside: f64 = u.iter().map(|&(c, d)| (b.min(d) - a.max(c)).max(0.0)).sum();
            (b - a) - inside
        })
        .sum()
}

fn criterion_4() -> Verdict {
    let mut rng = RngStream::new(404, 0);
    let dy = |rng: &mut RngStream, max: u32| rng.random_range(0..=max) as f64 / 1024.0;
    let mut violations = 0;
    let mut oracle_mismatch = 0;
    for _ in 0..1000 {
        let count = rng.random_range(1..=4);
        let raw: Vec<(f64, f64)> = (0..count)
            .map(|_| {
                let a = dy(&mut rng, 4096);
                (a, a + dy(&mut rng, 1024) + 1.0 / 1024.0)
            })
            .collect();
        let u = IntervalUnion::new(raw).unwrap();
        let h1 = dy(&mut rng, 256) + 1.0 / 1024.0;
        let h2 = h1 + dy(&mut rng, 512) + 1.0 / 1024.0;
        let t = sweep_set_1d(&u, h1, h2).unwrap();
        let oracle = sweep_oracle(u.intervals(), h1, h2);
        if t.intervals() != oracle.as_slice() {
            oracle_mismatch += 1;
        }
        let lhs = outside_length(&oracle, u.intervals());
        let rhs = h1 / (h2 - h1) * u.length();
        if lhs > rhs + 1e-12 || (t.difference_length(&u) - lhs).abs() > 1e-12 {
            violations += 1;
        }
    }
    let lib = verify_sweep_inequality(1000, &mut RngStream::new(405, 0));
    verdict(
        violations == 0 && oracle_mismatch == 0 && lib.violations == 0,
        format!(
            "sweep inequality: {violations} violations and {oracle_mismatch} sweep-set mismatches in 1000 \
             instances; library audit {} violations in {}",
            lib.violations, lib.trials
        ),
    )
}

fn criterion_5() -> Verdict {
    let mut rng = RngStream::new(505, 0);
    let mut inner = 0;
    let mut control = 0;
    let mut cells = 0;
    let mut ratio_range = (f64::INFINITY, 0.0f64);
    for n in [2usize, 3] {
        for alpha in [0.3, 0.6, PI / 3.0, 1.0, 1.3] {
            for l in [0.5, 1.0, 2.0] {
                let mut axis = vec![0.0; n];
                axis[n - 1] = 1.0;
                let cone = ConeSpec::new(Vector::zeros(n), Vector::new(axis).unwrap(), alpha, l).unwrap();
                let c = cone_constants(alpha, l).unwrap();
                // ε₀ = (ℓ/3) tan(α/2) cos α
                assert!((c.eps0 - l / 3.0 * (alpha / 2.0).tan() * alpha.cos()).abs() < 1e-15);
                for frac in [0.25, 0.5, 0.99] {
                    inner += verify_cone_inclusion(&cone, frac * c.eps0, 10_000, &mut rng).unwrap().violations;
                    cells += 1;
                }
                control += probe_cone_inclusion(&cone, 1.5 * c.eps0, 10_000, &mut rng).unwrap().violations;
                let ratio = cone_inclusion_breakpoint(alpha, l).unwrap() / c.eps0;
                ratio_range = (ratio_range.0.min(ratio), ratio_range.1.max(ratio));
            }
        }
    }
    verdict(
        inner == 0 && control >= 1,
        format!(
            "cone inclusion: {inner} violations over {cells} cells below eps0; negative control at 1.5*eps0: \
             {control} violations (inclusion provably holds up to {:.3}..{:.3} x eps0 on this grid)",
            ratio_range.0, ratio_range.1
        ),
    )
}

fn criterion_6() -> Verdict {
    let mut rng = RngStream::new(606, 0);
    let samples = 100_000;
    let mut failed = Vec::new();
    let mut origin_nonzero = 0;
    let mut measure_err = 0.0f64;
    for n in 2..=8usize {
        for alpha in [0.8, 1.0, 1.2, 1.4] {
            let rep = edge_measure_audit(n, alpha, 20, samples, &mut rng).unwrap();
            let m = cap_oracle(n, alpha);
            measure_err = measure_err.max((rep.cap_measure / m - 1.0).abs());
            let allowed = m + 3.0 * (m * (1.0 - m) / samples as f64).sqrt();
            if rep.anchors.len() != 20
                || rep.cone_violations != 0
                || rep.anchors.iter().any(|a| a.far_fraction > allowed + 1e-12)
            {
                failed.push((n, alpha));
            }
            if rep.anchors[0].anchor_norm != 0.0 || rep.anchors[0].far_fraction != 0.0 {
                origin_nonzero += 1;
            }
        }
    }
    verdict(
        failed.is_empty() && origin_nonzero == 0 && measure_err < 1e-8,
        format!(
            "edge measure: failing cells {failed:?}, origin nonzero in {origin_nonzero}, \
             cap measure rel err {measure_err:.1e}"
        ),
    )
}

fn criterion_7() -> Verdict {
    let spec = unit_interval_benchmark();
    let params = unit_interval_params().unwrap();
    let hyp = check_hypotheses(&params, 10, &[0.05; 10], 0.1 * 0.1);
    let intervals: Vec<(f64, f64)> = (0..10).map(|i| (0.1 * i as f64, 0.1 * i as f64 + 0.05)).collect();
    let mut bad = 0;
    let mut most = 0;
    for seed in 0..100 {
        let res = build_coclique(&spec, &params, &RngStream::new(seed, 0));
        most = most.max(res.retries_used);
        let x = &res.points;
        let coclique = x.iter().enumerate().all(|(i, a)| x[i + 1..].iter().all(|b| (a - b).abs() <= 0.9));
        let counts: Vec<usize> = intervals
            .iter()
            .map(|&(a, b)| x.iter().filter(|&&p| a <= p && p <= b).count())
            .collect();
        let per_member = counts.iter().all(|&c| 2 * params.k * c < params.m);
        let non_cover = intervals.iter().all(|&(a, b)| x.iter().any(|&p| p < a || p > b));
        let ok = res.success
            && res.retries_used <= 64
            && coclique
            && 2 * x.len() >= params.m
            && per_member
            && non_cover
            && counts == res.per_y_counts;
        if !ok {
            bad += 1;
        }
    }
    verdict(
        bad == 0 && hyp.all_pass(),
        format!(
            "coclique contract: {bad}/100 runs failed re-verification, most retries {most}, hypotheses pass: {}",
            hyp.all_pass()
        ),
    )
}

/// Whether some member `g` puts both segment endpoints of the placement
/// `x ↦ Rx + v` inside `g(K_eps)`; the thickened segment is convex.
fn placement_covered(family: &IsometryNet, ends: &[[f64; 2]; 2], eps: f64) -> bool {
    let seg_dist = |q: [f64; 2]| {
        let t = q[0].clamp(0.0, 1.0);
        ((q[0] - t).powi(2) + q[1].powi(2)).sqrt()
    };
    family.elements.iter().any(|g| {
        let b = g.matrix();
        let w = g.translation().coords();
        ends.iter().all(|e| {
            let d = [e[0] - w[0], e[1] - w[1]];
            let q = [b[(0, 0)] * d[0] + b[(1, 0)] * d[1], b[(0, 1)] * d[0] + b[(1, 1)] * d[1]];
            seg_dist(q) <= eps + 1e-12
        })
    })
}

fn oracle_failures(family: &IsometryNet, eps: f64, trials: usize, seed: u64) -> usize {
    let mut rng = RngStream::new(seed, 0);
    (0..trials)
        .filter(|_| {
            let th = rng.random_range(0.0..2.0 * PI);
            let v = loop {
                let v = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
                if v[0] * v[0] + v[1] * v[1] <= 1.0 {
                    break v;
                }
            };
            // Only R e₁ = (cos θ, sin θ) matters, so reflections are implicit.
            let ends = [v, [v[0] + th.cos(), v[1] + th.sin()]];
            !placement_covered(family, &ends, eps)
        })
        .count()
}

fn criterion_8() -> Verdict {
    let a = Vector::zeros(2);
    let b = Vector::basis(2, 0);
    let k = Body::segment(&a, &b).unwrap();
    let v = covercert_core::geom_core::Ball::centered(2, 1.0).unwrap();
    let eps = 0.2;
    let family = build_cover_family(&k, 1.0, &v, eps, &mut RngStream::new(808, 0)).unwrap();
    let lib = audit_cover_family(&family, &k, &[a.clone(), b.clone()], &v, eps, 1000, &RngStream::new(809, 0)).unwrap();
    let oracle = oracle_failures(&family, eps, 1000, 810);
    let crippled = IsometryNet {
        dim: 2,
        delta: eps / 2.0,
        elements: build_translation_cover(&v, eps / 2.0)
            .unwrap()
            .into_iter()
            .map(Isometry::translation_by)
            .collect(),
        certificate: NetCertificate::Deterministic,
    };
    let lib_neg = audit_cover_family(&crippled, &k, &[a, b], &v, eps, 1000, &RngStream::new(811, 0)).unwrap();
    let oracle_neg = oracle_failures(&crippled, eps, 1000, 812);
    verdict(
        lib.failures == 0 && oracle == 0 && lib_neg.failures > 0 && oracle_neg > 0,
        format!(
            "cover family ({} members): {} + {oracle} uncovered of 1000 + 1000 placements; without rotations \
             {} + {oracle_neg} uncovered",
            family.len(),
            lib.failures,
            lib_neg.failures
        ),
    )
}

fn criterion_9() -> Verdict {
    let args = WitnessArgs {
        n: 2,
        seed: 2024,
        samples: 4000,
        body: None,
        body_radius: 0.5,
        r: 0.55,
        alpha: None,
        unit_diameter: true,
        k: 1,
        eps: 0.02,
        v_radius: None,
        m: 60,
        max_retries: 64,
        out: None,
    };
    let first = run_witness(&args).unwrap().body;
    let second = run_witness(&args).unwrap().body;
    let cert = parse_certificate(&first).unwrap();
    let report = verify_certificate(&cert).unwrap();
    // Direct check: every member is a disc of radius 0.52 about its translation.
    let pts: Vec<&[f64]> = cert.points.iter().map(|p| p.coords()).collect();
    let mut diam = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            diam = diam.max(dist(pts[i], pts[j]));
        }
    }
    let contained = cert
        .family
        .net
        .elements
        .iter()
        .filter(|g| pts.iter().all(|p| dist(p, g.translation().coords()) <= 0.52))
        .count();
    let rebuilt = build_witness(&args).unwrap();
    let pass = cert.verdict
        && report.consistent
        && report.verdict
        && first == second
        && rebuilt == cert
        && diam <= 1.0
        && contained == 0
        && !pts.is_empty();
    verdict(
        pass,
        format!(
            "witness: verdict {}, |X| = {}, diam {diam:.6}, {} members, {contained} containing X, \
             re-verification {}, replay identical {}",
            cert.verdict,
            pts.len(),
            cert.family.net.len(),
            report.consistent && report.verdict,
            first == second
        ),
    )
}

fn criterion_10() -> Verdict {
    let mut issues: Vec<String> = Vec::new();
    for n in [2usize, 3, 5, 10, 100, 1_000, 10_000, 100_000, 1_000_000] {
        let c = choose_alpha(n, 2.6).unwrap();
        let rn = jung_radius(n).unwrap();
        let main = main_inequality(n, 0.9 * rn, 1.0).unwrap();
        let finite = ln_theorem_lower_bound(n).unwrap().is_finite()
            && borsuk_piece_bound(n).unwrap().ln_bound.is_finite()
            && proof_pipeline_budget(n).unwrap().quantities.values().all(|x| x.is_finite())
            && c.quantities.values().all(|x| x.is_finite())
            && main.quantities.values().all(|x| x.is_finite());
        if !finite {
            issues.push(format!("non-finite at n={n}"));
        }
    }
    let rel = |a: f64, b: f64| (a / b - 1.0).abs();
    let mut worst = 0.0f64;
    for n in 2..=20usize {
        let nf = n as f64;
        let rn = (nf / (2.0 * nf + 2.0)).sqrt();
        let vol = PI.powf(nf / 2.0) / gamma(nf / 2.0 + 1.0);
        let tb = (-(1.25 * nf * nf.ln()).sqrt()).exp() * vol * rn.powf(nf);
        worst = worst.max(rel(theorem_lower_bound(n).unwrap(), tb));
        let borsuk = tb / (vol * 0.5f64.powf(nf));
        worst = worst.max(rel(borsuk_piece_bound(n).unwrap().ln_bound.exp(), borsuk));
        let vn = vol * (1.0 - 1.0 / 2f64.sqrt()).powf(nf);
        let pipe = proof_pipeline_budget(n).unwrap();
        worst = worst.max(rel(pipe.get("v_n"), vn));
        worst = worst.max(rel(pipe.get("diameter_bound"), 2.0 * (1.0 + vn) / vn));
        let (r, alpha) = (0.9 * rn, 1.0);
        let m = cap_oracle(n, alpha);
        let p_lower = (r / rn).powf(nf) * nf.powf(-4.0 * m * nf.powi(3)) / (4.0 * E);
        if p_lower > 1e-300 {
            worst = worst.max(rel(main_inequality(n, r, alpha).unwrap().get("ln_p_lower").exp(), p_lower));
        }
        let c = choose_alpha(n, 2.6).unwrap();
        let a = (1.0 - 2.6 * nf.ln() / nf).asin();
        worst = worst.max(rel(c.alpha.unwrap(), a));
        worst = worst.max(rel(c.r.unwrap(), 1.0 / (2.0 * (a / 2.0).cos())));
    }
    if worst > 1e-9 {
        issues.push(format!("direct cross-check rel err {worst:.1e}"));
    }
    let n4 = theorem_lower_bound(4).unwrap();
    if (n4 - 0.0568).abs() > 5e-4 {
        issues.push(format!("n=4 bound {n4}"));
    }
    let keys = ["cos_alpha_ratio", "ln_rn_over_r_pow_ratio", "c1_ratio"];
    let mut prev = [f64::INFINITY; 3];
    let mut last = [0.0; 3];
    for n in [100usize, 1_000, 10_000, 100_000] {
        let c = choose_alpha(n, 2.6).unwrap();
        for (i, key) in keys.iter().enumerate() {
            let gap = (c.get(key) - 1.0).abs();
            if gap >= prev[i] {
                issues.push(format!("{key} not trending at n={n}"));
            }
            prev[i] = gap;
            last[i] = c.get(key);
        }
    }
    if prev.iter().any(|&g| g > 0.05) {
        issues.push(format!("ratios at 1e5 {last:?}"));
    }
    let at = choose_alpha(1000, 2.5).unwrap();
    let above = choose_alpha(1000, 2.6).unwrap();
    let flag_fires = !at.checks["lambda_above_threshold"]
        && at.notes.iter().any(|s| s.contains("boundary"))
        && above.checks["lambda_above_threshold"];
    if !flag_fires {
        issues.push("λ = 2.5 boundary flag".into());
    }
    verdict(
        issues.is_empty(),
        format!(
            "bound evaluators: direct rel err {worst:.1e}, n=4 bound {n4:.5}, ratios at 1e5 {:.4}/{:.4}/{:.4}, \
             boundary flag {flag_fires}{}",
            last[0],
            last[1],
            last[2],
            if issues.is_empty() { String::new() } else { format!("; issues {issues:?}") }
        ),
    )
}

/// Identifier, check and runtime budget.
type Criterion = (u32, fn() -> Verdict, Duration);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, criterion_1, Duration::from_secs(60)),
        (2, criterion_2, Duration::from_secs(60)),
        (3, criterion_3, Duration::from_secs(10)),
        (4, criterion_4, Duration::from_secs(10)),
        (5, criterion_5, Duration::from_secs(60)),
        (6, criterion_6, Duration::from_secs(120)),
        (7, criterion_7, Duration::from_secs(60)),
        (8, criterion_8, Duration::from_secs(60)),
        (9, criterion_9, Duration::from_secs(120)),
        (10, criterion_10, Duration::from_secs(30)),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = Vec::new();
    for (id, f, budget) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            verdict(false, format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let pass = v.pass && elapsed <= budget;
        println!(
            "{} criterion {id}: {} [{:.1}s of {}s]",
            if pass { "PASS" } else { "FAIL" },
            v.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        if !pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
