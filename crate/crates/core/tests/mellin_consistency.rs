//! Numeric Mellin transform in `u = b^{1/ρ}` against the closed gamma form.

use num_complex::Complex64;
use ratekit::integral::quad_eval;
use ratekit::quadrature::{integrate, integrate_to_infinity, QuadOptions};
use ratekit::representations::mellin_moment;
use ratekit::IntegralSpec;

fn numeric_moment(spec: &IntegralSpec, s: f64) -> f64 {
    let f = |u: f64| {
        let b = u.powf(spec.rho);
        u.powf(s - 1.0) * quad_eval(&spec.with_b(b), 1e-12).map(|r| r.value).unwrap_or(f64::NAN)
    };
    let opts = QuadOptions {
        rel_tol: 1e-9,
        ..QuadOptions::default()
    };
    let near = integrate(f, 0.0, 1.0, &opts).unwrap();
    let far = integrate_to_infinity(f, 1.0, 1.0, &opts).unwrap();
    near.value + far.value
}

fn check(spec: IntegralSpec) {
    for s in [0.5, 1.0, 1.5] {
        let want = mellin_moment(&spec, Complex64::new(s, 0.0)).unwrap();
        assert!(want.im.abs() < 1e-14 * want.re.abs());
        let got = numeric_moment(&spec, s);
        let rel = (got - want.re).abs() / want.re.abs();
        assert!(rel < 1e-5, "{spec:?} s={s}: numeric {got} closed {}", want.re);
    }
}

#[test]
fn classical() {
    check(IntegralSpec::i1(1.3, 0.8, 1.0, 1.0, 0.5));
    check(IntegralSpec::i1(2.0, 1.5, 1.0, 1.5, 1.5));
}

#[test]
fn heavy_tailed_pathway() {
    // strip for s/δ ends at 1/(β−1) − α/δ
    check(IntegralSpec::i1_beta(1.0, 1.0, 1.0, 2.0, 1.0, 1.2));
}

#[test]
fn compact_pathway() {
    check(IntegralSpec::i2_beta(1.5, 0.7, 1.0, 1.0, 1.0, 0.4));
}

#[test]
fn outside_the_strip_is_rejected() {
    let spec = IntegralSpec::i1_beta(1.0, 1.0, 1.0, 2.0, 1.0, 1.2);
    assert!(mellin_moment(&spec, Complex64::new(-0.5, 0.0)).is_err());
    assert!(mellin_moment(&spec, Complex64::new(20.0, 0.0)).is_err());
}
