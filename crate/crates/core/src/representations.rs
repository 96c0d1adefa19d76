//! Meijer G representations of the integral families and the dispatching
//! evaluator.
//!
//! When `m = δ/ρ` is a positive integer, Gauss's multiplication formula turns
//! `Γ(m s)` into `m` gammas with shifts `0, 1/m, …, (m−1)/m` and each family
//! becomes a constant times a Meijer G-function of `z = c·b^m / m^m`:
//!
//! | variant  | shape                | `c`      | upper parameter            |
//! |----------|----------------------|----------|----------------------------|
//! | `I1`     | `G^{m+1,0}_{0,m+1}`  | `a`      | none                       |
//! | `I1beta` | `G^{m+1,1}_{1,m+1}`  | `a(β−1)` | `(β−2)/(β−1) + θ`          |
//! | `I2beta` | `G^{m+1,0}_{1,m+1}`  | `a(1−β)` | `(2−β)/(1−β) + θ`          |
//!
//! with lower parameters `0, 1/m, …, (m−1)/m, θ` and `θ = α/δ = α/(mρ)`.

use std::f64::consts::PI;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{log_gamma_real, ComplexValue};
use crate::integral::{quad_eval, IntegralSpec, Variant};
use crate::meijer::{meijer_g, residue_series_eval_resolved, MeijerGParams};
use crate::mellin::{contour_eval_auto, integral_to_mellin};
use crate::result::{EvalResult, MethodTag};

/// Tolerance for treating `δ/ρ` as an integer.
pub const RATIO_TOLERANCE: f64 = 1e-12;

const DEFAULT_REL_TOL: f64 = 1e-11;
const SERIES_MAX_TERMS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Auto,
    Quadrature,
    Contour,
    Series,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(Method::Auto),
            "quadrature" | "quad" => Ok(Method::Quadrature),
            "contour" | "mellin" => Ok(Method::Contour),
            "series" | "residue" => Ok(Method::Series),
            other => Err(Error::InvalidSpec(format!("unknown method '{other}'"))),
        }
    }
}

/// `prefactor · G(z)` form of an integral.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedForm {
    pub g: MeijerGParams,
    pub prefactor: f64,
    pub log_prefactor: f64,
    pub m: usize,
    pub z: f64,
}

/// Integer `m = δ/ρ`, or `NonIntegerRatio`.
pub fn integer_ratio(delta: f64, rho: f64) -> Result<usize> {
    let ratio = delta / rho;
    let m = ratio.round();
    if m >= 1.0 && (ratio - m).abs() <= RATIO_TOLERANCE * ratio.max(1.0) {
        Ok(m as usize)
    } else {
        Err(Error::NonIntegerRatio(ratio))
    }
}

pub fn reduce(spec: &IntegralSpec) -> Result<ReducedForm> {
    spec.validate()?;
    if spec.variant == Variant::I2 {
        return Err(Error::UnsupportedVariant(
            "i2 with a generic cutoff has no Meijer G form".into(),
        ));
    }
    if spec.b <= 0.0 {
        return Err(Error::Domain("b = 0 has no Meijer G form".into()));
    }
    let m = integer_ratio(spec.delta, spec.rho)?;
    let mf = m as f64;
    let theta = spec.alpha / spec.delta;
    let mut lower: Vec<f64> = (0..m).map(|k| k as f64 / mf).collect();
    lower.push(theta);
    // (2π)^{(1−m)/2} / (ρ m^{1/2})
    let common = 0.5 * (1.0 - mf) * (2.0 * PI).ln() - spec.rho.ln() - 0.5 * mf.ln();
    let bm_over_mm = spec.b.powi(m as i32) / mf.powi(m as i32);
    let (g, log_prefactor, z) = match spec.variant {
        Variant::I1 => {
            let z = spec.a * bm_over_mm;
            let g = MeijerGParams::real(m + 1, 0, &[], &lower, z)?;
            (g, common - theta * spec.a.ln(), z)
        }
        Variant::I1Beta => {
            let beta = spec.beta_value()?;
            let c = spec.a * (beta - 1.0);
            let z = c * bm_over_mm;
            let upper = (beta - 2.0) / (beta - 1.0) + theta;
            let (lg, _) = log_gamma_real(1.0 / (beta - 1.0))?;
            let g = MeijerGParams::real(m + 1, 1, &[upper], &lower, z)?;
            (g, common - theta * c.ln() - lg, z)
        }
        Variant::I2Beta => {
            let beta = spec.beta_value()?;
            let c = spec.a * (1.0 - beta);
            let z = c * bm_over_mm;
            let upper = (2.0 - beta) / (1.0 - beta) + theta;
            let (lg, _) = log_gamma_real((2.0 - beta) / (1.0 - beta))?;
            let g = MeijerGParams::real(m + 1, 0, &[upper], &lower, z)?;
            (g, common - theta * c.ln() + lg, z)
        }
        Variant::I2 => unreachable!(),
    };
    Ok(ReducedForm {
        g,
        prefactor: log_prefactor.exp(),
        log_prefactor,
        m,
        z,
    })
}

fn scaled(r: EvalResult, log_prefactor: f64) -> Result<EvalResult> {
    let out = r.scaled(log_prefactor.exp());
    if !(out.value.is_finite() && out.abs_error_estimate.is_finite()) {
        return Err(Error::Domain(format!(
            "prefactor e^{log_prefactor} times G = {} is not representable",
            r.value
        )));
    }
    Ok(out)
}

fn contour_side(spec: &IntegralSpec, rel_tol: f64) -> Result<EvalResult> {
    contour_eval_auto(&integral_to_mellin(spec)?, rel_tol)
}

/// Fails with [`Error::Convergence`] when cancellation in the series leaves
/// less accuracy than `rel_tol`.
fn series_side(spec: &IntegralSpec, rel_tol: f64) -> Result<EvalResult> {
    let form = reduce(spec)?;
    let r = scaled(
        residue_series_eval_resolved(&form.g, SERIES_MAX_TERMS)?,
        form.log_prefactor,
    )?;
    if r.relative_error_estimate() > rel_tol {
        return Err(Error::Convergence {
            abs_error: r.abs_error_estimate,
            target: rel_tol * r.value.abs(),
            evaluations: r.work as usize,
        });
    }
    Ok(r)
}

/// Mellin-side value used by `Auto`: the G-function when `δ/ρ` is an integer
/// and the pathway prefactor is well conditioned, the H-form contour otherwise.
fn mellin_side(spec: &IntegralSpec, rel_tol: f64) -> Result<EvalResult> {
    let well_conditioned = match spec.variant {
        Variant::I1Beta => spec.beta_value()? - 1.0 > 0.02,
        _ => true,
    };
    if well_conditioned && integer_ratio(spec.delta, spec.rho).is_ok() {
        let form = reduce(spec)?;
        scaled(meijer_g(&form.g, rel_tol)?, form.log_prefactor)
    } else {
        contour_side(spec, rel_tol)
    }
}

pub fn eval(spec: &IntegralSpec, method: Method) -> Result<EvalResult> {
    eval_with(spec, method, DEFAULT_REL_TOL)
}

/// Evaluate with an explicit relative tolerance for the numerical methods.
pub fn eval_with(spec: &IntegralSpec, method: Method, rel_tol: f64) -> Result<EvalResult> {
    spec.validate()?;
    match method {
        Method::Quadrature => quad_eval(spec, rel_tol),
        Method::Contour => contour_side(spec, rel_tol),
        Method::Series => series_side(spec, rel_tol),
        Method::Auto => {
            let quad = quad_eval(spec, rel_tol)?;
            if spec.variant == Variant::I2 || spec.b == 0.0 {
                return Ok(quad);
            }
            let mb = mellin_side(spec, rel_tol)?;
            let allowed = 10.0 * (quad.abs_error_estimate + mb.abs_error_estimate);
            if (quad.value - mb.value).abs() > allowed {
                return Err(Error::MethodDisagreement {
                    first: MethodTag::Quadrature,
                    first_value: quad.value,
                    second: mb.method,
                    second_value: mb.value,
                    allowed,
                });
            }
            Ok(EvalResult {
                work: mb.work + quad.work,
                ..mb
            })
        }
    }
}

/// Mellin transform of `u ↦ I(b = u^ρ)` at `s`.
///
/// Equals `C · Γ(s/ρ) Γ(α/δ + s/δ) … · c^{−s/δ}` with `C` and the gamma
/// factors of [`integral_to_mellin`] and `c` the kernel's scale (`a`,
/// `a(β−1)` or `a(1−β)`).
pub fn mellin_moment(spec: &IntegralSpec, s: ComplexValue) -> Result<ComplexValue> {
    // the transform does not depend on b; any positive value gives the same weight
    let probe = spec.with_b(1.0);
    let phi = integral_to_mellin(&probe)?;
    let (lo, hi) = phi.pole_bounds();
    if !(s.re > lo && s.re < hi) {
        return Err(Error::StripViolation { re: s.re, im: s.im });
    }
    // with b = 1 the base is exactly c^{1/δ}
    phi.integrand(s)
}
