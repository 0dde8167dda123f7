//! Property tests for the sphere primitives, kernels and optimizers.

use proptest::prelude::*;
use sphere_depth::approx::{approximate, approximate_logged, Algorithm, ApproxConfig};
use sphere_depth::depths::{exact_zonoid, project, zd1, DepthNotion, UnivariateSample};
use sphere_depth::geometry::{
    great_circle_distance, great_circle_point, householder_apply, naive_mean, tangent_frame,
};
use sphere_depth::random::{rnd_sphere, rnd_spherical_cap, RngStream};
use sphere_depth::{Dataset, Direction};

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn direction(d: usize) -> impl Strategy<Value = Direction> {
    prop::collection::vec(-1.0f64..1.0, d).prop_filter_map("nonzero", |v| Direction::normalize(v).ok())
}

fn vector(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn householder_is_an_isometric_involution((p, x, y) in (2usize..12).prop_flat_map(|d| (direction(d), vector(d), vector(d)))) {
        let qx = householder_apply(&x, &p).unwrap();
        let qqx = householder_apply(&qx, &p).unwrap();
        for (a, b) in x.iter().zip(&qqx) {
            prop_assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()));
        }
        let qy = householder_apply(&y, &p).unwrap();
        let scale = 1.0 + dot(&x, &x).sqrt() * dot(&y, &y).sqrt();
        prop_assert!((dot(&qx, &qy) - dot(&x, &y)).abs() < 1e-12 * scale);
        let mut e1 = vec![0.0; p.dim()];
        e1[0] = 1.0;
        let qe = householder_apply(&e1, &p).unwrap();
        for (a, b) in qe.iter().zip(p.iter()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn geodesic_moves_proportionally((x, y, t) in (2usize..10).prop_flat_map(|d| (direction(d), direction(d), 0.0f64..1.0))) {
        let alpha = great_circle_distance(&x, &y).unwrap();
        prop_assume!(alpha > 1e-3 && alpha < std::f64::consts::PI - 1e-3);
        let g = great_circle_point(&x, &y, t, false).unwrap();
        prop_assert!((dot(&g, &g) - 1.0).abs() < 1e-12);
        prop_assert!((great_circle_distance(&x, &g).unwrap() - t * alpha).abs() < 1e-9);
        prop_assert!((great_circle_distance(&g, &y).unwrap() - (1.0 - t) * alpha).abs() < 1e-9);
        let end = great_circle_point(&x, &y, 1.0, false).unwrap();
        for (a, b) in end.iter().zip(y.iter()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn bounded_geodesic_never_leaves_the_hemisphere((x, y, t) in (2usize..8).prop_flat_map(|d| (direction(d), direction(d), -4.0f64..4.0))) {
        let alpha = great_circle_distance(&x, &y).unwrap();
        prop_assume!(alpha > 1e-3 && alpha < std::f64::consts::PI - 1e-3);
        let g = great_circle_point(&x, &y, t, true).unwrap();
        let moved = great_circle_distance(&x, &g).unwrap();
        prop_assert!(moved <= std::f64::consts::FRAC_PI_2 + 1e-9);
        prop_assert!((moved - (t * alpha).abs().min(std::f64::consts::FRAC_PI_2)).abs() < 1e-9);
    }

    #[test]
    fn tangent_frame_is_orthonormal(u in (2usize..15).prop_flat_map(direction)) {
        let frame = tangent_frame(&u);
        prop_assert_eq!(frame.len(), u.dim() - 1);
        for (i, a) in frame.iter().enumerate() {
            prop_assert!(dot(a, &u).abs() < 1e-10);
            for (j, b) in frame.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot(a, b) - target).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn cap_draws_respect_the_radius((p, eps, seed) in (2usize..12).prop_flat_map(|d| (direction(d), 0.01f64..1.57, any::<u64>()))) {
        let mut rng = RngStream::new(seed);
        for _ in 0..20 {
            let q = rnd_spherical_cap(&p, eps, &mut rng).unwrap();
            prop_assert!((dot(&q, &q) - 1.0).abs() < 1e-12);
            prop_assert!(great_circle_distance(&p, &q).unwrap() <= eps + 1e-9);
        }
    }

    #[test]
    fn naive_mean_of_one_point_is_the_point(p in (2usize..10).prop_flat_map(direction)) {
        let m = naive_mean(std::slice::from_ref(&p)).unwrap();
        for (a, b) in m.iter().zip(p.iter()) {
            prop_assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn kernels_are_affine_invariant(
        values in prop::collection::vec(-10.0f64..10.0, 1..40),
        zeta in -12.0f64..12.0,
        a in prop::sample::select(vec![-3.5, -1.0, -0.25, 0.5, 2.0, 7.0]),
        b in -4.0f64..4.0,
    ) {
        let original = UnivariateSample::new(values.clone());
        let mapped = UnivariateSample::new(values.iter().map(|v| a * v + b).collect());
        for notion in DepthNotion::ALL {
            let x = notion.kernel(zeta, &original);
            let y = notion.kernel(a * zeta + b, &mapped);
            prop_assert!((x - y).abs() < 1e-12 || notion == DepthNotion::Halfspace && x == y,
                "{notion}: {x} vs {y}");
            prop_assert!((0.0..=1.0).contains(&x));
        }
    }

    #[test]
    fn univariate_zonoid_matches_the_lp(values in prop::collection::vec(-3.0f64..3.0, 1..17), zeta in -3.5f64..3.5) {
        let data = Dataset::new(values.len(), 1, values.clone()).unwrap();
        let lp = exact_zonoid(&[zeta], &data).unwrap();
        let direct = zd1(zeta, &UnivariateSample::new(values));
        prop_assert!((lp - direct).abs() < 1e-9, "{lp} vs {direct}");
    }
}

fn random_instance(seed: u64, n: usize, d: usize) -> (Dataset, Vec<f64>) {
    let mut rng = RngStream::new(seed);
    let data = Dataset::new(n, d, (0..n * d).map(|_| rng.normal()).collect()).unwrap();
    let z = (0..d).map(|_| 0.5 * rng.normal::<f64>()).collect();
    (data, z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn optimizers_respect_budget_and_report_an_evaluated_upper_bound(
        seed in any::<u64>(),
        d in 2usize..6,
        budget in 1usize..300,
        algo in prop::sample::select(Algorithm::ALL.to_vec()),
        notion in prop::sample::select(DepthNotion::ALL.to_vec()),
    ) {
        let (data, z) = random_instance(seed, 30, d);
        let cfg = ApproxConfig::new(algo, budget);
        let mut rng = RngStream::new(seed ^ 1);
        let (res, log) = match approximate_logged(notion, &z, &data, &cfg, &mut rng) {
            Ok(v) => v,
            Err(sphere_depth::Error::GridTooCoarse { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(res.evals_used <= budget && res.evals_used >= 1);
        prop_assert_eq!(log.len(), res.evals_used);
        // the reported value is the minimum over the evaluated directions
        let values: Vec<f64> = log.iter().map(|p| {
            let zeta = dot(&z, p);
            notion.kernel(zeta, &project(&data, p).unwrap())
        }).collect();
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        prop_assert_eq!(res.value, min);
        prop_assert!(log.iter().all(|p| (dot(p, p) - 1.0).abs() < 1e-9));
        // trace: strictly decreasing, increasing evaluation indices, ends at the value
        prop_assert!(res.trace.windows(2).all(|w| w[0].eval < w[1].eval && w[0].value > w[1].value));
        prop_assert_eq!(res.trace.last().unwrap().value, res.value);
        prop_assert_eq!(res.trace[0].eval, 1);
        // deterministic replay
        let again = approximate(notion, &z, &data, &cfg, &mut RngStream::new(seed ^ 1)).unwrap();
        prop_assert_eq!(again, res);
    }
}

#[test]
fn every_algorithm_finds_one_half_on_the_cross() {
    let x = Dataset::from_rows(vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]]).unwrap();
    for algo in Algorithm::ALL {
        for seed in 0..5 {
            let r = approximate(DepthNotion::Halfspace, &[0.0, 0.0], &x, &ApproxConfig::new(algo, 100), &mut RngStream::new(seed));
            match r {
                Ok(r) => assert_eq!(r.value, 0.5, "{algo} seed {seed}"),
                Err(e) => panic!("{algo}: {e}"),
            }
        }
    }
}

#[test]
fn cap_polar_angle_is_uniform() {
    // polar angle of cap draws is uniform on [0, eps]: KS distance
    let (d, eps, n) = (10, 0.1, 10_000);
    let mut rng = RngStream::new(42);
    let p = rnd_sphere::<f64>(d, &mut rng).unwrap();
    let mut angles: Vec<f64> =
        (0..n).map(|_| great_circle_distance(&p, &rnd_spherical_cap(&p, eps, &mut rng).unwrap()).unwrap()).collect();
    angles.sort_by(f64::total_cmp);
    let ks = angles
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let f = a / eps;
            (f - i as f64 / n as f64).abs().max(((i + 1) as f64 / n as f64 - f).abs())
        })
        .fold(0.0, f64::max);
    assert!(ks < 0.02, "{ks}");
}
