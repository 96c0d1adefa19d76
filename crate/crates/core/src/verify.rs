//! Seeded verification suites.
//!
//! Every suite draws its random parameters sequentially from a ChaCha8
//! generator seeded by the caller, then evaluates the cases in parallel and
//! collects them in draw order, so reports are identical for a given seed
//! regardless of the thread count.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{gauss_multiplication_residual, log_gamma, wrap_phase, ComplexValue};
use crate::integral::{quad_eval, IntegralSpec, Variant};
use crate::limits::{beta_sequence, gamma_ratio_limit_check, LimitStudy};
use crate::meijer::{contour_eval_g, meijer_g, residue_series_eval, MeijerGParams};
use crate::mellin::{contour_eval, contour_eval_at, contour_sum, ContourConfig};
use crate::ode::{fd_residual, mellin_operator_identity, operator_from_theorem, refinement_study, GOperator, OdeProbe};
use crate::representations::{eval, reduce, Method};

/// One checked statement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    /// Measured quantity compared against `threshold` (residual, relative gap, slope error…).
    pub metric: f64,
    pub threshold: f64,
    pub detail: String,
}

impl CaseReport {
    fn below(suite: &str, name: String, metric: f64, threshold: f64, detail: String) -> Self {
        CaseReport {
            suite: suite.to_string(),
            name,
            passed: metric.is_finite() && metric < threshold,
            metric,
            threshold,
            detail,
        }
    }

    fn above(suite: &str, name: String, metric: f64, threshold: f64, detail: String) -> Self {
        CaseReport {
            passed: metric.is_finite() && metric > threshold,
            ..Self::below(suite, name, metric, threshold, detail)
        }
    }

    fn failed(suite: &str, name: String, err: &Error) -> Self {
        CaseReport {
            suite: suite.to_string(),
            name,
            passed: false,
            metric: f64::NAN,
            threshold: f64::NAN,
            detail: format!("error: {err}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

pub fn summarize(cases: &[CaseReport]) -> Summary {
    let passed = cases.iter().filter(|c| c.passed).count();
    Summary {
        total: cases.len(),
        passed,
        failed: cases.len() - passed,
    }
}

fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// `(a, b, 2√(b/a) K₁(2√(ab)))`, computed with 40-digit arithmetic.
pub const BESSEL_ANCHORS: [(f64, f64, f64); 10] = [
    (0.5, 0.5, 1.203_814_460_394_469_1),
    (1.0, 1.0, 0.279_731_763_633_044_85),
    (2.0, 0.25, 0.222_171_261_816_118_02),
    (0.25, 2.0, 1.777_370_094_528_944_2),
    (1.5, 0.7, 0.179_121_195_917_972_12),
    (0.8, 3.0, 0.138_275_609_608_433_75),
    (3.0, 0.9, 0.031_300_682_265_744_058),
    (0.3, 0.3, 2.605_669_879_527_004_5),
    (1.2, 2.5, 0.066_948_543_047_938_541),
    (2.2, 1.7, 0.025_539_073_012_766_667),
];

fn variant_name(v: Variant) -> &'static str {
    v.as_str()
}

/// Random spec with `δ = mρ` for the representation and ODE suites.
fn draw_spec(rng: &mut ChaCha8Rng, variant: Variant, m: usize, corollary: bool) -> IntegralSpec {
    let alpha = rng.gen_range(0.5..3.0);
    let a = rng.gen_range(0.3..3.0);
    let b = rng.gen_range(0.2..3.0);
    let (delta, rho) = if corollary {
        (1.0, 1.0 / m as f64)
    } else {
        let rho: f64 = rng.gen_range(0.3..1.5);
        (m as f64 * rho, rho)
    };
    match variant {
        Variant::I1 | Variant::I2 => IntegralSpec::i1(alpha, a, b, delta, rho),
        Variant::I1Beta => {
            let hi = (0.8 * delta / alpha).min(2.0);
            let bm1 = rng.gen_range(0.05..hi.max(0.06));
            IntegralSpec::i1_beta(alpha, a, b, delta, rho, 1.0 + bm1)
        }
        Variant::I2Beta => {
            let beta = rng.gen_range(-1.0..0.9);
            IntegralSpec::i2_beta(alpha, a, b, delta, rho, beta)
        }
    }
}

const PATHWAYS: [Variant; 3] = [Variant::I1, Variant::I1Beta, Variant::I2Beta];

/// Quadrature against `prefactor · G` for one spec.
pub fn repr_case(spec: &IntegralSpec, name: String) -> CaseReport {
    const SUITE: &str = "repr";
    let run = || -> Result<(f64, f64, String)> {
        let quad = quad_eval(spec, 1e-10)?;
        let form = reduce(spec)?;
        let g = meijer_g(&form.g, 1e-12)?;
        let value = g.value * form.prefactor;
        Ok((
            rel_gap(quad.value, value),
            value,
            format!(
                "quadrature={:e} g_form={:e} via {}",
                quad.value,
                value,
                g.method.as_str()
            ),
        ))
    };
    match run() {
        Ok((gap, _, detail)) => CaseReport::below(SUITE, name, gap, 1e-6, detail),
        Err(e) => CaseReport::failed(SUITE, name, &e),
    }
}

/// 25 draws per variant and `m ∈ {1, 2, 3}`, then the Bessel anchors.
pub fn repr_suite(seed: u64) -> Vec<CaseReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jobs = Vec::new();
    for variant in PATHWAYS {
        for m in 1..=3 {
            for i in 0..25 {
                // alternate theorem and corollary parameterizations
                let spec = draw_spec(&mut rng, variant, m, i % 5 == 4);
                jobs.push((spec, format!("{} m={m} draw={i}", variant_name(variant))));
            }
        }
    }
    let mut cases: Vec<CaseReport> = jobs.par_iter().map(|(s, n)| repr_case(s, n.clone())).collect();
    cases.extend(bessel_suite());
    cases
}

/// The `α = 1, δ = ρ = 1` integral by all three methods against `2√(b/a)K₁(2√(ab))`.
pub fn bessel_suite() -> Vec<CaseReport> {
    const SUITE: &str = "bessel";
    let jobs: Vec<(f64, f64, f64, Method)> = BESSEL_ANCHORS
        .iter()
        .flat_map(|&(a, b, v)| [Method::Quadrature, Method::Contour, Method::Series].map(|m| (a, b, v, m)))
        .collect();
    jobs.par_iter()
        .map(|&(a, b, want, method)| {
            let name = format!("a={a} b={b} {method:?}").to_lowercase();
            match eval(&IntegralSpec::i1(1.0, a, b, 1.0, 1.0), method) {
                Ok(r) => CaseReport::below(
                    SUITE,
                    name,
                    rel_gap(r.value, want),
                    1e-9,
                    format!("value={:e} reference={want:e}", r.value),
                ),
                Err(e) => CaseReport::failed(SUITE, name, &e),
            }
        })
        .collect()
}

/// Random points `c + it` inside the strip of `g`, off the real axis.
fn draw_s(rng: &mut ChaCha8Rng, g: &MeijerGParams, count: usize) -> Vec<ComplexValue> {
    let (lo, hi) = g.to_mellin().pole_bounds();
    let hi = if hi.is_finite() { hi } else { lo + 3.0 };
    (0..count)
        .map(|_| {
            let c = rng.gen_range(lo..hi);
            let t: f64 = rng.gen_range(0.2..10.0);
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            Complex64::new(c, sign * t)
        })
        .collect()
}

/// Mellin-side check of the operator for one spec, with a perturbed control.
pub fn ode_exact_cases(spec: &IntegralSpec, samples: &[ComplexValue], name: &str) -> Vec<CaseReport> {
    const SUITE: &str = "ode-exact";
    let run = || -> Result<(f64, f64, bool)> {
        let op = operator_from_theorem(spec)?;
        let g = reduce(spec)?.g;
        let coherent = op.approx_eq(&GOperator::from_g(&g), 1e-13);
        let residual = mellin_operator_identity(&op, &g, samples)?;
        let mut bad = op.clone();
        bad.lower_shifts[0] += 1e-3;
        let control = mellin_operator_identity(&bad, &g, samples)?;
        Ok((residual, control, coherent))
    };
    match run() {
        Ok((residual, control, coherent)) => {
            let mut main = CaseReport::below(
                SUITE,
                name.to_string(),
                residual,
                1e-11,
                format!("operator matches reduction: {coherent}"),
            );
            main.passed &= coherent;
            vec![
                main,
                CaseReport::above(
                    SUITE,
                    format!("{name} perturbed"),
                    control,
                    1e-4,
                    "negative control".into(),
                ),
            ]
        }
        Err(e) => vec![CaseReport::failed(SUITE, name.to_string(), &e)],
    }
}

pub const ODE_Z_POINTS: [f64; 5] = [0.4, 0.7, 1.0, 1.5, 2.2];
const ODE_STEP: f64 = 1e-2;
const REFINEMENT_STEPS: [f64; 5] = [0.32, 0.16, 0.08, 0.04, 0.02];

fn stencil_for(m: usize) -> usize {
    if m >= 2 {
        7
    } else {
        5
    }
}

/// Finite-difference residuals at five points plus a step-refinement study.
pub fn ode_numeric_cases(spec: &IntegralSpec, name: &str) -> Vec<CaseReport> {
    const SUITE: &str = "ode-fd";
    let run = || -> Result<Vec<CaseReport>> {
        let op = operator_from_theorem(spec)?;
        let m = op.m_order - 1;
        let probe = OdeProbe {
            z_points: ODE_Z_POINTS.to_vec(),
            fd_step: ODE_STEP,
            stencil_order: stencil_for(m),
        };
        let residuals = fd_residual(&op, spec, &probe)?;
        let mut out: Vec<CaseReport> = ODE_Z_POINTS
            .iter()
            .zip(&residuals)
            .map(|(z, r)| {
                CaseReport::below(
                    SUITE,
                    format!("{name} z={z}"),
                    *r,
                    1e-3,
                    format!("stencil={}", probe.stencil_order),
                )
            })
            .collect();
        let study = refinement_study(&op, spec, 1.0, probe.stencil_order, &REFINEMENT_STEPS)?;
        let off = (study.slope - study.expected_slope).abs() / study.expected_slope;
        out.push(CaseReport::below(
            SUITE,
            format!("{name} refinement"),
            off,
            0.3,
            format!(
                "slope={:.3} expected={} residuals={:?}",
                study.slope, study.expected_slope, study.residuals
            ),
        ));
        Ok(out)
    };
    run().unwrap_or_else(|e| vec![CaseReport::failed(SUITE, name.to_string(), &e)])
}

/// Exact route for six operator families (three theorems, three corollary
/// forms) over 100 draws each, then the numeric route for `m ∈ {1, 2}`.
pub fn ode_suite(seed: u64) -> Vec<CaseReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut exact = Vec::new();
    for variant in PATHWAYS {
        for corollary in [false, true] {
            for i in 0..100 {
                let m = rng.gen_range(1..=3);
                let spec = draw_spec(&mut rng, variant, m, corollary);
                let g = match reduce(&spec) {
                    Ok(f) => f.g,
                    Err(_) => continue,
                };
                let samples = draw_s(&mut rng, &g, 100);
                let family = if corollary { "corollary" } else { "theorem" };
                exact.push((
                    spec,
                    samples,
                    format!("{} {family} m={m} draw={i}", variant_name(variant)),
                ));
            }
        }
    }
    let mut numeric = Vec::new();
    for variant in PATHWAYS {
        for m in 1..=2 {
            let mut spec = draw_spec(&mut rng, variant, m, false);
            // moderate parameters keep f smooth on the probe range
            spec.alpha = 1.0 + 0.5 * rng.gen_range(0.0..1.0);
            if let Some(beta) = spec.beta.filter(|&b| b > 1.0) {
                spec.beta = Some(1.0 + (beta - 1.0).min(0.8 * spec.delta / spec.alpha));
            }
            numeric.push((spec, format!("{} m={m}", variant_name(variant))));
        }
    }
    let mut cases: Vec<CaseReport> = exact
        .par_iter()
        .flat_map_iter(|(s, samples, n)| ode_exact_cases(s, samples, n))
        .collect();
    cases.extend(
        numeric
            .par_iter()
            .flat_map_iter(|(s, n)| ode_numeric_cases(s, n))
            .collect::<Vec<_>>(),
    );
    cases
}

/// Both ODE routes for one spec.
pub fn ode_cases_for(spec: &IntegralSpec, seed: u64) -> Vec<CaseReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = match reduce(spec) {
        Ok(f) => {
            let samples = draw_s(&mut rng, &f.g, 100);
            ode_exact_cases(spec, &samples, "given spec")
        }
        Err(e) => vec![CaseReport::failed("ode-exact", "given spec".into(), &e)],
    };
    cases.extend(ode_numeric_cases(spec, "given spec"));
    cases
}

/// Convergence order of the pathway gap and monotone approach for one base spec.
pub fn limit_cases(spec: &IntegralSpec, name: &str) -> Vec<CaseReport> {
    const SUITE: &str = "limit";
    let mut out = Vec::new();
    for above in [true, false] {
        let side = if above { "i1beta" } else { "i2beta" };
        let label = format!("{name} {side}");
        match LimitStudy::run(spec, &beta_sequence(above, 4..=12)) {
            Ok(study) => {
                let mut case = CaseReport::below(
                    SUITE,
                    format!("{label} order"),
                    (study.order - 1.0).abs(),
                    0.5,
                    format!("order={:.4} gaps={:?}", study.order, study.errors),
                );
                if above {
                    case.passed &= study.is_monotone();
                }
                out.push(case);
            }
            Err(e) => out.push(CaseReport::failed(SUITE, label, &e)),
        }
    }
    out
}

/// Gamma-ratio limit at one `(α/δ, s)`: `|ratio − 1| < 5(1−β)` for `1−β ≤ 2^{−6}`.
pub fn gamma_ratio_case(alpha_over_delta: f64, s: ComplexValue, name: String) -> CaseReport {
    let betas = beta_sequence(false, 6..=16);
    match gamma_ratio_limit_check(alpha_over_delta, s, &betas) {
        Ok(devs) => {
            let worst = betas
                .iter()
                .zip(&devs)
                .map(|(b, d)| d / (5.0 * (1.0 - b)))
                .fold(0.0, f64::max);
            CaseReport::below(
                "gamma-ratio",
                name,
                worst,
                1.0,
                format!("max |ratio-1|/(5(1-beta)); deviations={devs:?}"),
            )
        }
        Err(e) => CaseReport::failed("gamma-ratio", name, &e),
    }
}

pub fn limit_suite(seed: u64) -> Vec<CaseReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let specs: Vec<(IntegralSpec, String)> = (0..4)
        .map(|i| {
            let alpha = rng.gen_range(0.5..2.0);
            let a = rng.gen_range(0.5..2.0);
            let b = rng.gen_range(0.3..2.0);
            let rho = rng.gen_range(0.5..1.2);
            let delta = rng.gen_range(0.8..2.0);
            (IntegralSpec::i1(alpha, a, b, delta, rho), format!("draw={i}"))
        })
        .collect();
    let ratios: Vec<(f64, ComplexValue, String)> = (0..10)
        .map(|i| {
            let aod = rng.gen_range(0.2..1.2);
            let s = Complex64::new(rng.gen_range(0.1..1.0), rng.gen_range(-0.5..0.5));
            (aod, s, format!("alpha/delta={aod:.4} s={s:.4} draw={i}"))
        })
        .collect();
    let mut cases: Vec<CaseReport> = specs.par_iter().flat_map_iter(|(s, n)| limit_cases(s, n)).collect();
    cases.extend(ratios.into_iter().map(|(a, s, n)| gamma_ratio_case(a, s, n)));
    cases
}

fn functional_residual(z: ComplexValue) -> Result<f64> {
    Ok(wrap_phase(log_gamma(z + 1.0)? - log_gamma(z)? - z.ln()).norm())
}

fn reflection_residual(z: ComplexValue) -> Result<f64> {
    // Γ(z)Γ(1−z) sin(πz) = π
    let lhs = log_gamma(z)? + log_gamma(1.0 - z)? + (z * PI).sin().ln();
    Ok(wrap_phase(lhs - PI.ln()).norm())
}

/// A random real G-instance of one of the three decaying shapes.
fn draw_g(rng: &mut ChaCha8Rng) -> Result<MeijerGParams> {
    loop {
        let q = rng.gen_range(2..=4);
        let lower: Vec<f64> = (0..q).map(|_| rng.gen_range(0.0..2.0)).collect();
        let z = 10f64.powf(rng.gen_range((0.01f64).log10()..(20f64).log10()));
        let shape = rng.gen_range(0..3);
        let g = match shape {
            0 => MeijerGParams::real(q, 0, &[], &lower, z),
            1 => MeijerGParams::real(q, 1, &[rng.gen_range(-1.0..1.0)], &lower, z),
            _ => MeijerGParams::real(q, 0, &[rng.gen_range(1.0..5.0)], &lower, z),
        };
        match g {
            Ok(g) if g.coincident_pair().is_none() => return Ok(g),
            _ => continue,
        }
    }
}

/// Series/contour agreement, abscissa independence, truncation and
/// imaginary-part checks on one G-instance.
pub fn coherence_cases(g: &MeijerGParams, name: &str) -> Vec<CaseReport> {
    const SUITE: &str = "coherence";
    let run = || -> Result<Vec<CaseReport>> {
        let series = residue_series_eval(g, 4000)?;
        let contour = contour_eval_g(g, 1e-13)?;
        let mut out = vec![CaseReport::below(
            SUITE,
            format!("{name} series-contour"),
            rel_gap(series.value, contour.value),
            1e-9,
            format!("series={:e} contour={:e}", series.value, contour.value),
        )];
        let phi = g.to_mellin();
        let (lo, hi) = phi.pole_bounds();
        let (c1, c2) = if hi.is_finite() {
            (lo + 0.3 * (hi - lo), lo + 0.7 * (hi - lo))
        } else {
            (lo + 0.3, lo + 1.3)
        };
        let r1 = contour_eval_at(&phi, c1, 1e-12)?;
        let r2 = contour_eval_at(&phi, c2, 1e-12)?;
        let allowed = r1.abs_error_estimate + r2.abs_error_estimate;
        out.push(CaseReport::below(
            SUITE,
            format!("{name} abscissa"),
            (r1.value - r2.value).abs() / allowed,
            1.0,
            format!("c1={c1:.3} {:e} c2={c2:.3} {:e}", r1.value, r2.value),
        ));
        let cfg = ContourConfig::auto(&phi)?;
        let base = contour_eval(&phi, &cfg)?;
        let doubled = contour_eval(
            &phi,
            &ContourConfig {
                half_height: 2.0 * cfg.half_height,
                nodes: 2 * cfg.nodes - 1,
                ..cfg
            },
        )?;
        out.push(CaseReport::below(
            SUITE,
            format!("{name} truncation"),
            (doubled.value - base.value).abs() / base.abs_error_estimate.max(f64::MIN_POSITIVE),
            1.0,
            format!("T={:.2} nodes={}", cfg.half_height, cfg.nodes),
        ));
        let raw = contour_sum(&phi, &cfg)?;
        out.push(CaseReport::below(
            SUITE,
            format!("{name} imaginary"),
            raw.im.abs() / raw.re.abs(),
            1e-10,
            format!("re={:e} im={:e}", raw.re, raw.im),
        ));
        Ok(out)
    };
    run().unwrap_or_else(|e| vec![CaseReport::failed(SUITE, name.to_string(), &e)])
}

/// Gamma identities, method coherence on 100 G-instances, and `Auto` on a
/// parameter grid (which must never report a method disagreement).
pub fn identities_suite(seed: u64) -> Vec<CaseReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();

    for m in 2..=6u32 {
        let zs: Vec<ComplexValue> = (0..200)
            .map(|_| Complex64::new(rng.gen_range(0.05..20.0), rng.gen_range(-20.0..20.0)))
            .collect();
        let worst = zs
            .iter()
            .map(|&z| gauss_multiplication_residual(z, m))
            .collect::<Result<Vec<f64>>>()
            .map(|v| v.into_iter().fold(0.0, f64::max));
        cases.push(match worst {
            Ok(w) => CaseReport::below(
                "gamma",
                format!("multiplication m={m}"),
                w,
                1e-11,
                "200 random z".into(),
            ),
            Err(e) => CaseReport::failed("gamma", format!("multiplication m={m}"), &e),
        });
    }
    let zs: Vec<ComplexValue> = (0..200)
        .map(|_| Complex64::new(rng.gen_range(-15.0..15.0), rng.gen_range(-15.0..15.0)))
        .collect();
    let functional = zs.iter().map(|&z| functional_residual(z)).collect::<Result<Vec<f64>>>();
    cases.push(match functional {
        Ok(v) => CaseReport::below(
            "gamma",
            "functional equation".into(),
            v.into_iter().fold(0.0, f64::max),
            1e-12,
            "200 random z".into(),
        ),
        Err(e) => CaseReport::failed("gamma", "functional equation".into(), &e),
    });
    let zs: Vec<ComplexValue> = (0..200)
        .map(|_| Complex64::new(rng.gen_range(-10.0..10.0), rng.gen_range(-5.0..5.0)))
        .collect();
    let reflection = zs.iter().map(|&z| reflection_residual(z)).collect::<Result<Vec<f64>>>();
    cases.push(match reflection {
        Ok(v) => CaseReport::below(
            "gamma",
            "reflection formula".into(),
            v.into_iter().fold(0.0, f64::max),
            1e-11,
            "200 random z".into(),
        ),
        Err(e) => CaseReport::failed("gamma", "reflection formula".into(), &e),
    });

    let gs: Vec<MeijerGParams> = (0..100)
        .map(|_| draw_g(&mut rng))
        .collect::<Result<_>>()
        .expect("draws always succeed");
    cases.extend(
        gs.par_iter()
            .enumerate()
            .flat_map_iter(|(i, g)| coherence_cases(g, &format!("G{}{}{}{} draw={i}", g.m, g.n, g.p, g.q)))
            .collect::<Vec<_>>(),
    );

    let grid: Vec<IntegralSpec> = (0..60)
        .map(|i| {
            let variant = PATHWAYS[i % 3];
            let m = 1 + (i / 3) % 3;
            draw_spec(&mut rng, variant, m, false)
        })
        .collect();
    let disagreements: Vec<CaseReport> = grid
        .par_iter()
        .enumerate()
        .map(|(i, spec)| {
            let name = format!("auto {} draw={i}", variant_name(spec.variant));
            match eval(spec, Method::Auto) {
                Ok(r) => CaseReport::below(
                    "auto",
                    name,
                    r.relative_error_estimate(),
                    1e-8,
                    format!("value={:e}", r.value),
                ),
                Err(e) => CaseReport::failed("auto", name, &e),
            }
        })
        .collect();
    cases.extend(disagreements);
    cases
}

pub fn all_suites(seed: u64) -> Vec<CaseReport> {
    let mut cases = repr_suite(seed);
    cases.extend(ode_suite(seed));
    cases.extend(limit_suite(seed));
    cases.extend(identities_suite(seed));
    cases
}
