mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steinersym::geometry::{
    hausdorff_distance, project_point, reflect, steiner_symmetrize, to_canonical, Line, Point2,
    Polygon,
};
use steinersym::schedules::{side_ratio_step, triangle_schedule};
use steinersym::stochastic::{estimate_exit_curve, interval_survival, stable_subordinator_step};
use steinersym::{SimParams, StableIndex};

use common::{random_convex, random_line, random_star, same_set};

fn star() -> impl Strategy<Value = Polygon> {
    (3usize..12, any::<u64>())
        .prop_map(|(n, seed)| random_star(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

fn convex() -> impl Strategy<Value = Polygon> {
    (3usize..10, any::<u64>())
        .prop_map(|(n, seed)| random_convex(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

fn line() -> impl Strategy<Value = Line> {
    any::<u64>().prop_map(|seed| random_line(&mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn area_is_preserved(p in star(), l in line()) {
        let s = steiner_symmetrize(&p, &l).unwrap();
        prop_assert!((s.area() - p.area()).abs() <= 1e-10 * p.area());
    }

    #[test]
    fn result_is_symmetric(p in star(), l in line()) {
        let s = steiner_symmetrize(&p, &l).unwrap();
        prop_assert!(same_set(&reflect(&s, &l), &s, 1e-9 * p.diameter()));
    }

    #[test]
    fn idempotent(p in star(), l in line()) {
        let s = steiner_symmetrize(&p, &l).unwrap();
        let ss = steiner_symmetrize(&s, &l).unwrap();
        prop_assert!(same_set(&ss, &s, 1e-9 * p.diameter()));
    }

    #[test]
    fn diameter_does_not_grow(p in star(), l in line()) {
        let s = steiner_symmetrize(&p, &l).unwrap();
        prop_assert!(s.diameter() <= p.diameter() + 1e-9);
    }

    #[test]
    fn convexity_is_preserved(p in convex(), l in line()) {
        prop_assert!(steiner_symmetrize(&p, &l).unwrap().is_convex());
    }

    #[test]
    fn rigid_motion_equivariance(p in star(), l in line()) {
        let t = to_canonical(&l);
        let direct = steiner_symmetrize(&p, &l).unwrap();
        let via = steiner_symmetrize(&p.transformed(&t), &Line::y_axis()).unwrap().transformed(&t.inverse());
        prop_assert!(same_set(&direct, &via, 1e-9 * p.diameter()));
    }

    #[test]
    fn reflection_before_symmetrizing_changes_nothing(p in star(), l in line()) {
        let a = steiner_symmetrize(&p, &l).unwrap();
        let b = steiner_symmetrize(&reflect(&p, &l), &l).unwrap();
        prop_assert!(same_set(&a, &b, 1e-9 * p.diameter()));
    }

    #[test]
    fn projection_stays_inside(p in convex(), l in line(), u in 0.0f64..1.0, v in 0.0f64..1.0) {
        // a random interior point of a convex polygon, as a convex combination
        let w = p.vertices();
        let x = w[0] * (1.0 - u) + (w[1] * (1.0 - v) + w[2] * v) * u;
        let s = steiner_symmetrize(&p, &l).unwrap();
        let y = project_point(x, &l);
        prop_assert!(s.contains(y) || s.boundary_distance(y) < 1e-9);
    }

    #[test]
    fn projection_is_closest_point_on_line(l in line(), px in -3.0f64..3.0, py in -3.0f64..3.0, s in -5.0f64..5.0) {
        let p = Point2::new(px, py);
        let q = project_point(p, &l);
        prop_assert!(l.signed_distance(q).abs() < 1e-12);
        prop_assert!(p.distance(q) <= p.distance(l.point_at(s)) + 1e-12);
    }

    #[test]
    fn hausdorff_is_a_metric(a in convex(), b in convex(), c in convex()) {
        let (ab, ba, bc, ac) = (hausdorff_distance(&a, &b), hausdorff_distance(&b, &a), hausdorff_distance(&b, &c), hausdorff_distance(&a, &c));
        prop_assert!(hausdorff_distance(&a, &a) < 1e-12);
        prop_assert!((ab - ba).abs() < 1e-9);
        prop_assert!(ac <= ab + bc + 1e-9);
    }

    #[test]
    fn ratio_recurrence_is_increasing_and_bounded(c0 in 1e-3f64..1e3) {
        let mut c = side_ratio_step(c0).unwrap();
        for _ in 0..30 {
            let next = side_ratio_step(c).unwrap();
            prop_assert!(next <= 1.0 + 1e-15 && next >= c - 1e-15);
            c = next;
        }
    }

    #[test]
    fn triangle_schedule_monotone(p in (any::<u64>()).prop_map(|s| random_convex(&mut ChaCha8Rng::seed_from_u64(s), 3))) {
        let states = triangle_schedule(&p, p.centroid(), 12).unwrap();
        let d0 = states[0].polygon.diameter();
        for w in states.windows(2) {
            prop_assert!(w[1].polygon.min_interior_angle() >= w[0].polygon.min_interior_angle() - 1e-9);
            prop_assert!(w[1].polygon.min_width() >= w[0].polygon.min_width() - 1e-9);
            prop_assert!(w[1].polygon.diameter() <= w[0].polygon.diameter() + 1e-9);
            prop_assert!(w[1].polygon.epsilon_cone_radius().unwrap() >= states[0].polygon.epsilon_cone_radius().unwrap() - 1e-9);
            prop_assert!(w[1].tracked.distance(states[0].tracked) <= 2.0 * d0);
        }
    }

    #[test]
    fn interval_survival_is_a_decreasing_probability(x in -0.49f64..0.49, t1 in 1e-3f64..2.0, dt in 0.0f64..1.0) {
        let a = interval_survival(0.5, x, t1);
        let b = interval_survival(0.5, x, t1 + dt);
        prop_assert!((0.0..=1.0).contains(&a) && b <= a + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn subordinator_output_is_positive(beta in 0.05f64..0.95, t in 1e-3f64..10.0, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..500 {
            prop_assert!(stable_subordinator_step(t, beta, &mut rng).unwrap() > 0.0);
        }
    }

    #[test]
    fn exit_curve_is_monotone_in_range(alpha in 0.3f64..=2.0, seed in any::<u64>(), x in -0.4f64..0.4) {
        let sq = Polygon::rectangle(-0.5, -0.5, 0.5, 0.5).unwrap();
        let p = SimParams::new(0.3, 12, 600, seed);
        let c = estimate_exit_curve(&sq, Point2::new(x, 0.0), StableIndex::new(alpha).unwrap(), p, &[0.05, 0.1, 0.3]).unwrap();
        for w in c.windows(2) {
            prop_assert!(w[1].p_hat <= w[0].p_hat);
        }
        for e in &c {
            prop_assert!((0.0..=1.0).contains(&e.p_hat));
            prop_assert!((e.std_err - (e.p_hat * (1.0 - e.p_hat) / e.n as f64).sqrt()).abs() < 1e-12);
        }
    }
}
