use biovi_core::neuromatrix::{
    activation, and_truth_table, delta_update, density_quadrature, fire_check,
    product_ratio_matrix, product_ratio_unsimplified, Activation, ClassSums, GaussianParams,
    Perceptron, TruthRow,
};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn gaussian() -> impl Strategy<Value = GaussianParams> {
    (-1e3..1e3f64, 1e-3..1e2f64).prop_map(|(m, s)| GaussianParams::new(m, s).unwrap())
}

fn positive_sums() -> impl Strategy<Value = ClassSums> {
    prop::array::uniform3(1e-3..1e3f64)
        .prop_map(|s| ClassSums::new(s[0], s[1], s[2], [0.0; 3]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn step_matches_sign(x in -1e6..1e6f64) {
        prop_assert_eq!(activation(x, Activation::Step) == 1.0, x >= 0.0);
    }

    #[test]
    fn sigmoid_is_bounded_increasing_symmetric(x in -30.0..30.0f64, d in 1e-3..1.0f64) {
        let s = |x| activation(x, Activation::Sigmoid);
        prop_assert!(s(x) > 0.0 && s(x) < 1.0);
        prop_assert!(s(x + d) > s(x));
        prop_assert!((s(x) + s(-x) - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn delta_is_noop_iff_no_error(w in -1e3..1e3f64, x in 1e-3..1e3f64, d: bool, a: bool) {
        prop_assert_eq!(delta_update(w, x, d, a) == w, d == a);
    }

    #[test]
    fn and_table_converges_within_100_epochs(
        rate in 0.05..2.0f64,
        w0 in prop::array::uniform3(-1.0..1.0f64),
        order in subsequence(vec![0usize, 1, 2, 3], 4).prop_shuffle(),
    ) {
        let table = and_truth_table();
        let rows: Vec<TruthRow> = order.iter().map(|&i| table[i].clone()).collect();
        let mut p = Perceptron::new(2, rate).unwrap();
        p.weights = vec![w0[0], w0[1]];
        p.bias = w0[2];
        let out = p.train(&rows, 100).unwrap();
        prop_assert!(out.converged, "{out:?} {p:?}");
        for r in &table {
            prop_assert_eq!(p.predict(&r.inputs), r.desired);
        }
    }

    #[test]
    fn product_ratio_rows_hold_each_product_over_each_sum(s in positive_sums()) {
        let simple = product_ratio_matrix(&s).unwrap();
        let raw = product_ratio_unsimplified(&s).unwrap();
        for r in 0..3 {
            let mut a = simple[r].to_vec();
            let mut b = raw[r].to_vec();
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() <= 1e-12 * x.abs());
            }
        }
    }

    #[test]
    fn product_ratio_corner_identity(s in positive_sums()) {
        let m = product_ratio_matrix(&s).unwrap();
        let lhs = m[0][2] * m[2][0];
        let rhs = m[0][0] * m[2][2];
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
    }

    #[test]
    fn density_integrates_to_one(g in gaussian()) {
        let area = density_quadrature(&g, 2000);
        prop_assert!((area - 1.0).abs() <= 1e-6, "{area}");
    }

    #[test]
    fn convolution_adds_parameters_exactly(a in gaussian(), b in gaussian()) {
        let c = a.convolve(&b);
        prop_assert_eq!(c.mu(), a.mu() + b.mu());
        prop_assert_eq!(c.sigma(), (a.sigma() * a.sigma() + b.sigma() * b.sigma()).sqrt());
        prop_assert_eq!(c, b.convolve(&a));
    }

    #[test]
    fn convolution_is_associative(a in gaussian(), b in gaussian(), c in gaussian()) {
        let l = a.convolve(&b).convolve(&c);
        let r = a.convolve(&b.convolve(&c));
        prop_assert!((l.mu() - r.mu()).abs() <= 1e-12 * (a.mu().abs() + b.mu().abs() + c.mu().abs()));
        prop_assert!((l.sigma() - r.sigma()).abs() <= 1e-12 * l.sigma());
    }

    #[test]
    fn firing_invariant_under_positive_rescaling(
        s in prop::array::uniform3(-1e3..1e3f64),
        th in prop::array::uniform3(-1e3..1e3f64),
        k in prop_oneof![Just(0.5), Just(2.0), Just(4.0), Just(1024.0)],
    ) {
        let a = ClassSums::new(s[0], s[1], s[2], th).unwrap();
        let b = ClassSums::new(k * s[0], k * s[1], k * s[2], th.map(|t| k * t)).unwrap();
        prop_assert_eq!(fire_check(&a), fire_check(&b));
    }

    #[test]
    fn raising_a_sum_never_unfires(
        s in prop::array::uniform3(-1e3..1e3f64),
        th in prop::array::uniform3(-1e3..1e3f64),
        bump in 0.0..1e3f64,
        g in 0usize..3,
    ) {
        let a = ClassSums::new(s[0], s[1], s[2], th).unwrap();
        let mut raised = s;
        raised[g] += bump;
        let b = ClassSums::new(raised[0], raised[1], raised[2], th).unwrap();
        prop_assert!(!fire_check(&a)[g] || fire_check(&b)[g]);
    }
}
