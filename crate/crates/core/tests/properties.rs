use num_complex::Complex64;
use proptest::prelude::*;
use ratekit::gamma::{log_gamma, wrap_phase};
use ratekit::integral::quad_eval;
use ratekit::IntegralSpec;

fn classical() -> impl Strategy<Value = IntegralSpec> {
    (0.3f64..4.0, 0.2f64..4.0, 0.05f64..5.0, 0.3f64..3.0, 0.3f64..3.0)
        .prop_map(|(alpha, a, b, delta, rho)| IntegralSpec::i1(alpha, a, b, delta, rho))
}

fn value(spec: &IntegralSpec, tol: f64) -> f64 {
    quad_eval(spec, tol).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn values_are_positive(spec in classical(), bm1 in 0.01f64..0.5, beta in -1.0f64..0.95) {
        prop_assert!(value(&spec, 1e-10) > 0.0);
        let heavy = IntegralSpec::i1_beta(spec.alpha, spec.a, spec.b, spec.delta, spec.rho, 1.0 + bm1 * spec.delta / spec.alpha);
        prop_assert!(value(&heavy, 1e-10) > 0.0);
        let compact = IntegralSpec::i2_beta(spec.alpha, spec.a, spec.b, spec.delta, spec.rho, beta);
        // below about e^{-700} the value is not representable as a positive double
        let d = compact.effective_cutoff().unwrap();
        prop_assume!(spec.b * d.powf(-spec.rho) < 600.0);
        prop_assert!(value(&compact, 1e-10) > 0.0);
    }

    #[test]
    fn decreasing_in_b(spec in classical(), factor in 1.05f64..3.0) {
        let lo = value(&spec, 1e-11);
        let hi = value(&spec.with_b(spec.b * factor), 1e-11);
        prop_assert!(hi < lo, "{lo} {hi}");
    }

    #[test]
    fn pathway_ordering(spec in classical(), bm1 in 0.01f64..0.8, omb in 0.01f64..1.5) {
        let beta_up = 1.0 + bm1 * spec.delta / spec.alpha;
        let up = IntegralSpec::i1_beta(spec.alpha, spec.a, spec.b, spec.delta, spec.rho, beta_up);
        let down = IntegralSpec::i2_beta(spec.alpha, spec.a, spec.b, spec.delta, spec.rho, 1.0 - omb);
        prop_assume!(spec.b * down.effective_cutoff().unwrap().powf(-spec.rho) < 600.0);
        let (vu, v, vd) = (value(&up, 1e-11), value(&spec, 1e-11), value(&down, 1e-11));
        prop_assert!(vu >= v && v >= vd, "{vu} {v} {vd}");
    }

    #[test]
    fn tolerance_consistency(spec in classical()) {
        let tight = quad_eval(&spec, 1e-10).unwrap();
        let loose = quad_eval(&spec, 1e-6).unwrap();
        prop_assert!((tight.value - loose.value).abs() <= 10.0 * loose.abs_error_estimate,
            "{} {} est {}", tight.value, loose.value, loose.abs_error_estimate);
    }

    #[test]
    fn scaling_law(spec in classical(), lambda in 0.3f64..3.0) {
        let scaled = IntegralSpec::i1(
            spec.alpha,
            spec.a * lambda.powf(spec.delta),
            spec.b * lambda.powf(-spec.rho),
            spec.delta,
            spec.rho,
        );
        let lhs = value(&spec, 1e-12);
        let rhs = lambda.powf(spec.alpha) * value(&scaled, 1e-12);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs, "{lhs} {rhs}");
    }

    #[test]
    fn functional_equation(re in -50.0f64..50.0, im in -50.0f64..50.0) {
        let z = Complex64::new(re, im);
        prop_assume!(z.im.abs() > 1e-3 || (z.re - z.re.round()).abs() > 1e-3);
        let ratio = (log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap()).exp();
        prop_assert!((ratio - z).norm() <= 1e-12 * z.norm(), "{z}: {ratio}");
    }

    #[test]
    fn reflection(re in -30.0f64..30.0, im in -8.0f64..8.0) {
        let z = Complex64::new(re, im);
        prop_assume!(z.im.abs() > 1e-3 || (z.re - z.re.round()).abs() > 1e-3);
        let pi = std::f64::consts::PI;
        let lhs = log_gamma(z).unwrap() + log_gamma(1.0 - z).unwrap() - (pi / (z * pi).sin()).ln();
        prop_assert!(wrap_phase(lhs).norm() <= 1e-11, "{z}: {lhs}");
    }
}
