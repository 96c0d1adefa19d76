//! Complex log-gamma and the classical identities built on it.
//!
//! `log_gamma` uses the Stirling series after shifting the argument to
//! `|w| >= 17, Re w >= 0` with the recurrence, which keeps the result on the
//! principal branch everywhere except the far-left half plane. For
//! `Re z < -20` the reflection formula is used and the imaginary part is only
//! defined modulo `2π`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// The complex variable used throughout the contour code.
pub type ComplexValue = Complex64;

/// Distance from a nonpositive integer below which an argument counts as a pole.
pub const POLE_TOLERANCE: f64 = 1e-13;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;
const STIRLING_MIN_MODULUS: f64 = 17.0;
const REFLECTION_THRESHOLD: f64 = -20.0;

/// B_{2k} / (2k (2k-1)) for k = 1..=10.
const STIRLING_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Bernoulli numbers B_0..=B_20 with B_1 = -1/2.
const BERNOULLI: [f64; 21] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43_867.0 / 798.0,
    0.0,
    -174_611.0 / 330.0,
];

/// True when `z` is within [`POLE_TOLERANCE`] of 0, -1, -2, ...
pub fn is_pole(z: ComplexValue) -> bool {
    if z.im.abs() > POLE_TOLERANCE || z.re > 0.5 {
        return false;
    }
    let n = z.re.round();
    n <= 0.0 && (z - Complex64::new(n, 0.0)).norm() <= POLE_TOLERANCE
}

fn stirling(w: ComplexValue) -> ComplexValue {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING_COEFFS {
        series += power * c;
        power *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series
}

/// `ln sin(πz)` modulo `2πi`, stable for large `|Im z|`.
fn log_sin_pi(z: ComplexValue) -> ComplexValue {
    if z.im < 0.0 {
        return log_sin_pi(z.conj()).conj();
    }
    let n = z.re.round();
    let r = Complex64::new(z.re - n, z.im);
    let parity = if (n as i64).rem_euclid(2) == 1 {
        Complex64::new(0.0, PI)
    } else {
        Complex64::new(0.0, 0.0)
    };
    if r.im < 5.0 {
        return (r * PI).sin().ln() + parity;
    }
    // sin(πr) = -e^{-iπr} (1 - e^{2iπr}) / (2i)
    let i = Complex64::i();
    let tail = (i * r * (2.0 * PI)).exp();
    -i * r * PI - (i * 2.0).ln() + i * PI + (Complex64::new(1.0, 0.0) - tail).ln() + parity
}

/// Principal-branch `ln Γ(z)`.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if is_pole(z) {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    if z.re < REFLECTION_THRESHOLD {
        let one_minus = Complex64::new(1.0, 0.0) - z;
        return Ok(LN_PI - log_sin_pi(z) - stirling(one_minus));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 0.0 || w.norm() < STIRLING_MIN_MODULUS {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

/// `Γ(z)`; overflows to infinity for large real arguments.
pub fn gamma(z: ComplexValue) -> Result<ComplexValue> {
    log_gamma(z).map(|l| l.exp())
}

/// `1/Γ(z)`, zero at the poles of `Γ`.
pub fn rgamma(z: ComplexValue) -> ComplexValue {
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// `ln Γ(x)` for real `x`, returned as `(ln|Γ(x)|, sign Γ(x))`.
pub fn log_gamma_real(x: f64) -> Result<(f64, f64)> {
    let l = log_gamma(Complex64::new(x, 0.0))?;
    let sign = if x > 0.0 || (x.floor() as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    Ok((l.re, sign))
}

/// Reduce the imaginary part of a complex logarithm to `(-π, π]`.
pub fn wrap_phase(z: ComplexValue) -> ComplexValue {
    let two_pi = 2.0 * PI;
    let mut im = z.im - two_pi * (z.im / two_pi).round();
    if im <= -PI {
        im += two_pi;
    }
    Complex64::new(z.re, im)
}

/// Bernoulli polynomial `B_n(a)`.
fn bernoulli_poly(n: usize, a: ComplexValue) -> ComplexValue {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut binom = 1.0;
    for (k, &bk) in BERNOULLI.iter().enumerate().take(n + 1) {
        if bk != 0.0 {
            acc += a.powi((n - k) as i32) * (binom * bk);
        }
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    acc
}

/// `ln Γ(x + a) − ln Γ(x + b)` for real `x > 0`, modulo `2πi`.
///
/// For `x` large compared with `|a|` and `|b|` the difference is taken from
/// the asymptotic expansion in Bernoulli polynomials, which avoids the
/// cancellation between two large log-gamma values.
pub fn log_gamma_diff(x: f64, a: ComplexValue, b: ComplexValue) -> Result<ComplexValue> {
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if x >= 30.0_f64.max(10.0 * (1.0 + a.norm() + b.norm())) {
        let mut acc = (a - b) * x.ln();
        let mut xpow = x;
        for k in 2..=BERNOULLI.len() - 1 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let term = (bernoulli_poly(k, a) - bernoulli_poly(k, b)) * (sign / ((k * (k - 1)) as f64 * xpow));
            acc += term;
            if term.norm() <= 1e-18 * acc.norm().max(1e-300) {
                break;
            }
            xpow *= x;
        }
        return Ok(acc);
    }
    let xa = Complex64::new(x, 0.0) + a;
    let xb = Complex64::new(x, 0.0) + b;
    Ok(log_gamma(xa)? - log_gamma(xb)?)
}

/// Residual of the Gauss multiplication formula
/// `Γ(mz) = (2π)^{(1−m)/2} m^{mz−1/2} Π_{k<m} Γ(z + k/m)` in log form,
/// with the imaginary part reduced modulo `2π`.
pub fn gauss_multiplication_residual(z: ComplexValue, m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain("multiplication order must be positive".into()));
    }
    let mf = m as f64;
    let lhs = log_gamma(z * mf)?;
    let mut rhs = Complex64::new((1.0 - mf) * HALF_LN_2PI + 0.0, 0.0) + (z * mf - 0.5) * mf.ln();
    for k in 0..m {
        rhs += log_gamma(z + k as f64 / mf)?;
    }
    Ok(wrap_phase(lhs - rhs).norm())
}

/// `Γ(x + a1) x^{a2 − a1} / Γ(x + a2)`, which tends to 1 as `x → ∞`.
pub fn asymptotic_gamma_ratio(x: f64, a1: ComplexValue, a2: ComplexValue) -> Result<ComplexValue> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("ratio needs finite x > 0, got {x}")));
    }
    if a1 == a2 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let log_ratio = log_gamma_diff(x, a1, a2)? + (a2 - a1) * x.ln();
    Ok(log_ratio.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> ComplexValue {
        Complex64::new(re, im)
    }

    fn assert_close_mod_2pi(got: ComplexValue, want: ComplexValue, tol: f64) {
        let d = wrap_phase(got - want);
        assert!(
            d.norm() <= tol * want.norm().max(1.0),
            "got {got}, want {want}, diff {}",
            d.norm()
        );
    }

    #[test]
    fn log_gamma_anchor_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-14);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.572_364_942_924_700_1).abs() < 1e-13 * 0.573);
        assert!(half.im.abs() < 1e-15);
    }

    // Reference values from tools/oracles.py (mpmath, 40 digits).
    #[test]
    fn log_gamma_matches_arbitrary_precision() {
        let z = log_gamma(c(3.0, 4.0)).unwrap();
        let want = c(-1.756_626_784_603_784_1, 4.742_664_438_034_657_9);
        assert!((z - want).norm() < 1e-13 * want.norm());

        let z = log_gamma(c(0.1, -20.0)).unwrap();
        let want = c(-31.695_265_907_346_563, -39.284_410_010_649_361);
        assert!((z - want).norm() < 1e-13 * want.norm());

        let z = log_gamma(c(1e5, 1e5)).unwrap();
        let want = c(1_007_405.078_374_697_5, 1_164_489.329_165_266_6);
        assert!((z - want).norm() < 1e-13 * want.norm());

        let z = log_gamma(c(-2.5, 0.3)).unwrap();
        assert_close_mod_2pi(z, c(-0.432_088_892_613_201_92, -9.093_345_421_289_741_5), 1e-13);
    }

    #[test]
    fn principal_branch_in_shift_region() {
        // The shift path reproduces the principal branch exactly, not just mod 2π.
        let z = log_gamma(c(-2.5, 0.3)).unwrap();
        assert!((z.im - -9.093_345_421_289_741_5).abs() < 1e-12);
    }

    #[test]
    fn poles_are_rejected() {
        for n in [0.0, -1.0, -2.0, -17.0, -40.0] {
            assert!(matches!(log_gamma(c(n, 0.0)), Err(Error::Pole { .. })));
        }
        assert!(matches!(log_gamma(c(-3.0 + 5e-14, 0.0)), Err(Error::Pole { .. })));
        assert!(log_gamma(c(-3.0 + 1e-9, 0.0)).is_ok());
        assert_eq!(rgamma(c(-4.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn real_log_gamma_sign() {
        let (l, s) = log_gamma_real(-0.5).unwrap();
        // Γ(-1/2) = -2√π
        assert_eq!(s, -1.0);
        assert!((l - (2.0 * PI.sqrt()).ln()).abs() < 1e-14);
        let (_, s) = log_gamma_real(-1.5).unwrap();
        assert_eq!(s, 1.0);
    }

    #[test]
    fn multiplication_formula_examples() {
        assert!(gauss_multiplication_residual(c(0.5, 0.0), 2).unwrap() < 1e-13);
        assert!(gauss_multiplication_residual(c(1.0, 0.0), 3).unwrap() < 1e-12);
        assert!(gauss_multiplication_residual(c(0.7, 0.3), 4).unwrap() < 1e-11);
    }

    #[test]
    fn multiplication_formula_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for m in 2..=6u32 {
            for _ in 0..200 {
                let z = c(rng.gen_range(0.05..12.0), rng.gen_range(-15.0..15.0));
                let r = gauss_multiplication_residual(z, m).unwrap();
                assert!(r < 1e-11, "m={m} z={z} residual {r}");
            }
        }
    }

    #[test]
    fn gamma_ratio_examples() {
        let r = asymptotic_gamma_ratio(1e6, c(1.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!((r - c(1e6 / (1e6 + 1.0), 0.0)).norm() < 1e-14);
        assert!((r - 1.0).norm() < 3e-6);

        let r = asymptotic_gamma_ratio(1e3, c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(r, c(1.0, 0.0));

        // mpmath reference; first-order Stirling correction is 1 - (a2-a1)(a1+a2-1)/(2x).
        let a2 = c(2.5, 0.5);
        let r = asymptotic_gamma_ratio(1e4, c(1.0, 0.0), a2).unwrap();
        let want = c(0.999_825_020_311_002_55, -0.000_099_972_921_874_146_35);
        assert!((r - want).norm() < 1e-13);
        let first_order = c(1.0, 0.0) - (a2 - 1.0) * (a2 + 1.0 - 1.0) / 2e4;
        assert!((r - first_order).norm() < 1e-7);
        assert!(((r - 1.0).norm() - 2.015e-4).abs() < 1e-6);
    }

    #[test]
    fn gamma_ratio_error_halves_when_x_doubles() {
        for (a1, a2) in [
            (c(1.0, 0.0), c(2.5, 0.0)),
            (c(0.3, 0.0), c(1.7, 0.4)),
            (c(1.0, 0.0), c(1.2, -0.8)),
        ] {
            let mut x = 50.0;
            let mut prev = (asymptotic_gamma_ratio(x, a1, a2).unwrap() - 1.0).norm();
            for _ in 0..8 {
                x *= 2.0;
                let cur = (asymptotic_gamma_ratio(x, a1, a2).unwrap() - 1.0).norm();
                let factor = prev / cur;
                assert!((1.8..=2.2).contains(&factor), "x={x} factor {factor}");
                prev = cur;
            }
        }
    }

    #[test]
    fn log_gamma_diff_agrees_with_direct_difference() {
        let a = c(0.7, 0.2);
        let b = c(2.1, -0.4);
        for x in [31.0, 100.0, 1e3] {
            let fast = log_gamma_diff(x, a, b).unwrap();
            let direct = log_gamma(c(x, 0.0) + a).unwrap() - log_gamma(c(x, 0.0) + b).unwrap();
            assert_close_mod_2pi(fast, direct, 1e-12);
        }
    }

    fn far_from_poles(z: ComplexValue) -> bool {
        z.im.abs() > 1e-3 || (z.re - z.re.round()).abs() > 1e-3 || z.re > 0.5
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn functional_equation(re in -50.0..50.0f64, im in -50.0..50.0f64) {
            let z = c(re, im);
            prop_assume!(far_from_poles(z) && far_from_poles(z + 1.0));
            let ratio = (log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap()).exp();
            prop_assert!((ratio - z).norm() <= 1e-12 * z.norm(), "z={} ratio={}", z, ratio);
        }

        #[test]
        fn reflection(re in -30.0..30.0f64, im in -8.0..8.0f64) {
            let z = c(re, im);
            let w = c(1.0, 0.0) - z;
            prop_assume!(far_from_poles(z) && far_from_poles(w));
            let lhs = log_gamma(z).unwrap() + log_gamma(w).unwrap();
            let rhs = (c(PI, 0.0) / (z * PI).sin()).ln();
            let d = wrap_phase(lhs - rhs);
            prop_assert!(d.norm() <= 1e-11 * lhs.norm().max(1.0), "z={} diff={}", z, d.norm());
        }
    }
}
