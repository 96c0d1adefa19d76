//! Globally adaptive Gauss–Kronrod (10/21-point) quadrature.
//!
//! This is the numerical engine behind the brute-force evaluation of the
//! integral families; callers map infinite ranges onto finite ones before
//! handing them over.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_580_632_004_417,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Tolerances and budget for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            rel_tol: 1e-10,
            abs_tol: 0.0,
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOutput {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

const INITIAL_PANELS: usize = 4;

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

/// One 21-point Kronrod panel with its embedded 10-point Gauss estimate.
fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut res_k = f_center * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let err = rescale_error((res_k - res_g) * half, res_abs * half.abs(), res_asc * half.abs());
    (value, err)
}

/// Integrate `f` over the finite interval `[a, b]`.
///
/// Non-finite integrand values are treated as zero; the callers only produce
/// them where the exact integrand underflows at a mapped infinite endpoint.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadOutput> {
    let g = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            y
        } else {
            0.0
        }
    };
    if a == b {
        return Ok(QuadOutput {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
        });
    }
    // a single panel can agree with its Gauss rule by accident on a peak it
    // barely resolves, so start from a few panels
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    for i in 0..INITIAL_PANELS {
        let lo = a + (b - a) * i as f64 / INITIAL_PANELS as f64;
        let hi = if i + 1 == INITIAL_PANELS {
            b
        } else {
            a + (b - a) * (i + 1) as f64 / INITIAL_PANELS as f64
        };
        let (value, error) = kronrod21(&g, lo, hi);
        total += value;
        total_err += error;
        heap.push(Segment {
            a: lo,
            b: hi,
            value,
            error,
        });
    }
    let mut evaluations = 21 * INITIAL_PANELS;
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.abs());
        if total_err <= target {
            break;
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::Convergence {
                abs_error: total_err,
                target,
                evaluations,
            });
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // interval cannot be split further in floating point
            return Err(Error::Convergence {
                abs_error: total_err,
                target,
                evaluations,
            });
        }
        let (v1, e1) = kronrod21(&g, worst.a, mid);
        let (v2, e2) = kronrod21(&g, mid, worst.b);
        evaluations += 42;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
        if heap.len() % 64 == 0 {
            // refresh running sums to stop drift
            total = heap.iter().map(|s| s.value).sum();
            total_err = heap.iter().map(|s| s.error).sum();
        }
    }
    let mut segs: Vec<Segment> = heap.into_vec();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = segs.iter().map(|s| s.value).sum();
    let abs_error = segs.iter().map(|s| s.error).sum();
    Ok(QuadOutput {
        value,
        abs_error,
        evaluations,
    })
}

/// Integrate `f` over `[a, ∞)` through `x = a + scale · u / (1 − u)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, scale: f64, opts: &QuadOptions) -> Result<QuadOutput> {
    let mapped = |u: f64| {
        let one_minus = 1.0 - u;
        if one_minus <= 0.0 {
            return 0.0;
        }
        let x = a + scale * u / one_minus;
        let jac = scale / (one_minus * one_minus);
        let y = f(x);
        if y == 0.0 {
            0.0
        } else {
            y * jac
        }
    };
    integrate(mapped, 0.0, 1.0, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let out = integrate(|x| 3.0 * x * x, 0.0, 2.0, &QuadOptions::default()).unwrap();
        assert!((out.value - 8.0).abs() < 1e-14);
        assert_eq!(out.evaluations, 21 * INITIAL_PANELS);
    }

    #[test]
    fn endpoint_singularity_converges() {
        let opts = QuadOptions {
            rel_tol: 1e-11,
            ..Default::default()
        };
        let out = integrate(|x: f64| x.powf(-0.5), 0.0, 1.0, &opts).unwrap();
        assert!((out.value - 2.0).abs() < 1e-10);
        assert!(out.abs_error < 1e-10);
    }

    #[test]
    fn exponential_tail() {
        let opts = QuadOptions {
            rel_tol: 1e-13,
            ..Default::default()
        };
        let out = integrate_to_infinity(|x: f64| (-x).exp(), 0.0, 1.0, &opts).unwrap();
        assert!((out.value - 1.0).abs() < 1e-13);
        let out = integrate_to_infinity(|x: f64| x * (-2.0 * x).exp(), 1.0, 0.5, &opts).unwrap();
        let want = 0.75 * (-2.0f64).exp();
        assert!((out.value - want).abs() < 1e-13 * want);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let opts = QuadOptions {
            rel_tol: 1e-14,
            abs_tol: 0.0,
            max_intervals: 3,
        };
        let err = integrate(|x: f64| (50.0 * x).sin().abs(), 0.0, 10.0, &opts).unwrap_err();
        assert!(matches!(err, Error::Convergence { .. }));
    }
}
