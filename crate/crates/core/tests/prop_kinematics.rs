use biovi_core::prekinematics::{
    anticipated_phase_velocity, bendable_wavelength, consumed_distance, default_basis, divergences,
    generalized_cross_matrix, motion_stretch, run_sample_problem, worldline_classify,
    ConsumptionState, ProblemMode, WorldlineKind, PROBLEM_IDS,
};
use biovi_core::quantity::constants::SPEED_OF_LIGHT;
use biovi_core::{Angle, Dimension, Quantity};
use proptest::prelude::*;

fn qd(x: f64, d: Dimension) -> Quantity {
    Quantity::new(x, d).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn vec3() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1e3..1e3f64, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn consumed_distance_vanishes_once_consumed(
        v in 0.0..1e9f64,
        t in 0.0..1e6f64,
        extra in 0.0..1e6f64,
        eps in 1e-9..0.999f64,
    ) {
        let state = ConsumptionState::new(
            qd(t, Dimension::TIME),
            qd(t + extra, Dimension::TIME),
            eps,
        ).unwrap();
        let x = consumed_distance(qd(v, Dimension::VELOCITY), &state).unwrap();
        prop_assert_eq!(x.magnitude(), 0.0);
        prop_assert_eq!(x.dim(), Dimension::LENGTH);
    }

    #[test]
    fn bendable_wavelength_at_equal_times_is_classical(
        v in 1e-3..1e9f64,
        nu in 1e-3..1e18f64,
        t in 1e-9..1e9f64,
    ) {
        let t = qd(t, Dimension::TIME);
        let l = bendable_wavelength(qd(v, Dimension::VELOCITY), t, qd(nu, Dimension::FREQUENCY), t).unwrap();
        prop_assert!(rel(l.magnitude(), v / nu) <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn phase_velocity_product_is_c_squared(v in 1e-6..SPEED_OF_LIGHT) {
        let p = anticipated_phase_velocity(qd(v, Dimension::VELOCITY)).unwrap();
        let c2 = SPEED_OF_LIGHT * SPEED_OF_LIGHT;
        prop_assert!(rel(p.abs_vp.magnitude() * v, c2) <= 4.0 * f64::EPSILON);
        prop_assert!(p.abs_vp.magnitude() >= SPEED_OF_LIGHT);
    }

    #[test]
    fn motion_stretch_is_multilinear_and_even(
        v in -1e8..1e8f64,
        x in -10.0..10.0f64,
        y in -10.0..10.0f64,
        k in -5.0..5.0f64,
        deg in -360.0..360.0f64,
        dt in 1e-3..1e3f64,
    ) {
        let dt = qd(dt, Dimension::TIME);
        let ms = |v: f64, x: f64, y: f64, a: f64| {
            motion_stretch(
                qd(v, Dimension::VELOCITY),
                qd(x, Dimension::LENGTH),
                qd(y, Dimension::LENGTH),
                Angle::from_degrees(a),
                dt,
            ).unwrap().magnitude()
        };
        let base = ms(v, x, y, deg);
        let tol = 1e-12 * base.abs().max(f64::MIN_POSITIVE);
        prop_assert!((ms(k * v, x, y, deg) - k * base).abs() <= tol * k.abs().max(1.0) + 1e-300);
        prop_assert!((ms(v, k * x, y, deg) - k * base).abs() <= tol * k.abs().max(1.0) + 1e-300);
        prop_assert!((ms(v, x, k * y, deg) - k * base).abs() <= tol * k.abs().max(1.0) + 1e-300);
        prop_assert_eq!(ms(v, x, y, -deg), base);
    }

    #[test]
    fn cross_product_is_orthogonal(a in vec3(), b in vec3()) {
        let g = generalized_cross_matrix(&[a.clone(), b.clone()], &default_basis(3)).unwrap();
        let c = g.components;
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let scale = norm(&a) * norm(&b) * norm(&c);
        for v in [&a, &b] {
            let dot: f64 = v.iter().zip(&c).map(|(x, y)| x * y).sum();
            prop_assert!(dot.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE), "dot {dot} scale {scale}");
        }
    }

    #[test]
    fn cross_product_is_antisymmetric(a in vec3(), b in vec3()) {
        let ab = generalized_cross_matrix(&[a.clone(), b.clone()], &default_basis(3)).unwrap().components;
        let ba = generalized_cross_matrix(&[b, a], &default_basis(3)).unwrap().components;
        for (x, y) in ab.iter().zip(&ba) {
            prop_assert!((x + y).abs() <= 1e-12 * x.abs().max(y.abs()).max(f64::MIN_POSITIVE));
        }
    }

    #[test]
    fn worldline_classes_partition_speeds(v in prop_oneof![0.0..1e9f64, Just(SPEED_OF_LIGHT)]) {
        let kind = worldline_classify(qd(v, Dimension::VELOCITY), None).unwrap().kind;
        let expected = if (v - SPEED_OF_LIGHT).abs() <= 1e-12 * SPEED_OF_LIGHT {
            WorldlineKind::Lightlike
        } else if v < SPEED_OF_LIGHT {
            WorldlineKind::Timelike
        } else {
            WorldlineKind::Spacelike
        };
        prop_assert_eq!(kind, expected);
    }
}

#[test]
fn modes_disagree_only_on_area_dependent_values() {
    for id in PROBLEM_IDS {
        let strict = run_sample_problem(id, ProblemMode::StrictPaper).unwrap();
        let recomputed = run_sample_problem(id, ProblemMode::Recomputed).unwrap();
        let mut differing: Vec<&str> = strict
            .values
            .iter()
            .zip(&recomputed.values)
            .filter(|(a, b)| rel(a.value.magnitude(), b.value.magnitude()) > 1e-3)
            .map(|(a, _)| a.label.as_str())
            .collect();
        differing.sort_unstable();
        let mut reported: Vec<String> = divergences(id)
            .unwrap()
            .into_iter()
            .map(|d| d.label)
            .collect();
        reported.sort_unstable();
        assert_eq!(differing, reported, "{id}");
        if id == "2.2c" {
            assert_eq!(
                differing,
                ["beta", "chi_squared", "delta_k", "nu_obs", "nu_post"]
            );
        } else {
            assert!(differing.is_empty(), "{id}");
        }
    }
}
