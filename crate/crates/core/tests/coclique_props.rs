use covercert_core::bodies::Body;
use covercert_core::coclique::*;
use covercert_core::geom_core::{cap_measure_exact, Ball, Vector};
use covercert_core::RngStream;
use proptest::prelude::*;
use rand::Rng;

fn interval_family(m: usize) -> Vec<Body> {
    (0..m)
        .map(|i| {
            let c = -0.9 + 1.8 * i as f64 / m.max(1) as f64;
            Body::ball(Ball::new(Vector::new(vec![c, 0.0]).unwrap(), 0.15).unwrap())
        })
        .collect()
}

#[test]
fn chernoff_dominance_grid() {
    let mut checked = 0;
    for m in (10..=200usize).step_by(10) {
        for k in 1..=5usize {
            for i in 1..=50 {
                let p = 0.001 * i as f64;
                if 2.0 * std::f64::consts::E * k as f64 * p >= 1.0 {
                    continue;
                }
                let t = m.div_ceil(2 * k);
                let exact = exact_binomial_tail(m, p, t);
                let bound = chernoff_bound(m, k, p);
                assert!(exact < bound, "M={m} k={k} p={p}: {exact:e} vs {bound:e}");
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn edge_measure_audit_dimensions() {
    let mut rng = RngStream::new(77, 0);
    for n in 2..=8usize {
        for alpha in [0.5, 1.0, 1.4] {
            let rep = edge_measure_audit(n, alpha, 8, 20_000, &mut rng).unwrap();
            assert!(rep.pass, "n={n} α={alpha}: {rep:?}");
            assert_eq!(rep.cone_violations, 0);
            assert_eq!(rep.anchors[0].far_fraction, 0.0);
            assert!((rep.cap_measure - cap_measure_exact(n, alpha).unwrap()).abs() < 1e-15);
        }
    }
}

#[test]
fn geometric_coclique_certificate_k1_k2() {
    let r: f64 = 0.6;
    let alpha = 2.0 * (1.0 / (2.0 * r)).acos();
    for k in [1usize, 2] {
        let family = interval_family(12);
        let bodies = family.clone();
        let spec = geometric_spec(2, r, alpha, family, true).unwrap();
        let params = CocliqueParams::new(40, k, 0.05)
            .unwrap()
            .with_acceptance(Acceptance::ExhaustiveNonCover);
        let res = build_coclique(&spec, &params, &RngStream::new(k as u64, 0));
        assert!(res.success);
        for (i, a) in res.points.iter().enumerate() {
            for b in &res.points[i + 1..] {
                assert!(a.dist(b) < 1.0);
            }
        }
        // Direct check of N(X, 𝒴) > k over all k-subsets.
        let member: Vec<Vec<bool>> = bodies
            .iter()
            .map(|b| res.points.iter().map(|p| b.contains(p).unwrap()).collect())
            .collect();
        let covers = |idx: &[usize]| (0..res.points.len()).all(|j| idx.iter().any(|&i| member[i][j]));
        for i in 0..bodies.len() {
            assert!(!covers(&[i]));
            if k == 2 {
                for j in i + 1..bodies.len() {
                    assert!(!covers(&[i, j]));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deletion_soundness(m in 2usize..80, threshold in 0.3f64..1.0, seed in any::<u64>()) {
        let spec: MeasurableGraphSpec<f64> = MeasurableGraphSpec {
            sampler: Box::new(|rng: &mut RngStream| rng.random::<f64>()),
            edge: Box::new(move |x: &f64, y: &f64| (x - y).abs() > threshold),
            family: vec![],
            labels: vec![],
        };
        let params = CocliqueParams::new(m, 1, 0.1).unwrap().with_retries(4);
        let res = build_coclique(&spec, &params, &RngStream::new(seed, 0));
        if res.success {
            for (i, a) in res.points.iter().enumerate() {
                for b in &res.points[i + 1..] {
                    prop_assert!((a - b).abs() <= threshold);
                }
            }
            let last = res.attempts.last().unwrap();
            prop_assert!(res.points.len() >= m - last.edges);
            prop_assert!(2 * res.points.len() >= m);
        }
    }

    #[test]
    fn per_member_threshold_certifies(m in 10usize..60, k in 1usize..4, seed in any::<u64>()) {
        let spec: MeasurableGraphSpec<f64> = MeasurableGraphSpec {
            sampler: Box::new(|rng: &mut RngStream| rng.random::<f64>()),
            edge: Box::new(|_: &f64, _: &f64| false),
            family: (0..8)
                .map(|i| -> Membership<f64> {
                    let a = i as f64 / 8.0;
                    Box::new(move |x: &f64| a <= *x && *x < a + 0.05)
                })
                .collect(),
            labels: (0..8).map(|i| i.to_string()).collect(),
        };
        let params = CocliqueParams::new(m, k, 0.05).unwrap();
        let res = build_coclique(&spec, &params, &RngStream::new(seed, 1));
        if res.success {
            prop_assert!(res.per_y_counts.iter().all(|&c| 2 * k * c < m));
            prop_assert!(k * res.per_y_counts.iter().max().copied().unwrap_or(0) < res.points.len());
        }
    }

    #[test]
    fn attempts_are_deterministic(seed in any::<u64>()) {
        let spec = geometric_spec(3, 0.6, 1.0, interval_family(3).into_iter().map(|b| {
            let c = b.bound().center.coords().to_vec();
            Body::ball(Ball::new(Vector::new(vec![c[0], c[1], 0.0]).unwrap(), 0.15).unwrap())
        }).collect(), false).unwrap();
        let params = CocliqueParams::new(30, 1, 0.1).unwrap();
        let a = build_coclique(&spec, &params, &RngStream::new(seed, 2));
        let b = build_coclique(&spec, &params, &RngStream::new(seed, 2));
        prop_assert_eq!(a.points, b.points);
        prop_assert_eq!(a.attempts, b.attempts);
    }
}
