//! `β → 1` limits of the pathway families.
//!
//! Both pathway kernels tend to `e^{−a x^δ}` as `β → 1`, and the cutoff of
//! `I2beta` moves to infinity, so both integrals approach `I1` with the same
//! `α, a, b, δ, ρ`. On the Mellin side the limit is carried by
//! `Γ(1+x) x^w / Γ(1+x+w) → 1` with `x = 1/(1−β)`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{asymptotic_gamma_ratio, ComplexValue};
use crate::integral::{pathway_kernel, quad_eval, IntegralSpec, Variant};
use crate::ode::least_squares_slope;

const QUAD_TOL: f64 = 1e-12;

/// `1 ± 2^{−k}` for `k` in `ks`; `+` for the heavy-tailed side.
pub fn beta_sequence(above: bool, ks: std::ops::RangeInclusive<i32>) -> Vec<f64> {
    ks.map(|k| {
        let d = 2f64.powi(-k);
        if above {
            1.0 + d
        } else {
            1.0 - d
        }
    })
    .collect()
}

/// Default sequences, `k = 4 … 16`.
pub fn default_beta_sequence(above: bool) -> Vec<f64> {
    beta_sequence(above, 4..=16)
}

fn pathway_spec(spec: &IntegralSpec, beta: f64) -> Result<IntegralSpec> {
    let IntegralSpec {
        alpha,
        a,
        b,
        delta,
        rho,
        ..
    } = *spec;
    if beta > 1.0 {
        Ok(IntegralSpec::i1_beta(alpha, a, b, delta, rho, beta))
    } else if beta < 1.0 {
        Ok(IntegralSpec::i2_beta(alpha, a, b, delta, rho, beta))
    } else {
        Err(Error::Domain(
            "beta = 1 is the classical integral itself; use I1 directly".into(),
        ))
    }
}

/// `|I_β − I1|` with the pathway variant chosen by the side of `β`.
///
/// The classical target is `I1`: the `I2beta` cutoff grows without bound as
/// `β → 1⁻`.
pub fn pathway_gap(spec: &IntegralSpec, beta: f64) -> Result<f64> {
    let pathway = pathway_spec(spec, beta)?;
    let classical = spec.classical();
    let ip = quad_eval(&pathway, QUAD_TOL)?.value;
    let ic = quad_eval(&classical, QUAD_TOL)?.value;
    Ok((ip - ic).abs())
}

/// Gaps along a `β` sequence and their empirical convergence order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitStudy {
    pub base_spec: IntegralSpec,
    pub beta_sequence: Vec<f64>,
    pub errors: Vec<f64>,
    /// Least-squares slope of `ln gap` against `ln |1 − β|`.
    pub order: f64,
}

impl LimitStudy {
    pub fn run(base_spec: &IntegralSpec, beta_sequence: &[f64]) -> Result<LimitStudy> {
        check_sequence(beta_sequence)?;
        let base = base_spec.classical();
        let errors: Vec<f64> = beta_sequence
            .par_iter()
            .map(|&beta| pathway_gap(&base, beta))
            .collect::<Result<_>>()?;
        let xs: Vec<f64> = beta_sequence.iter().map(|b| (1.0 - b).abs().ln()).collect();
        let ys: Vec<f64> = errors.iter().map(|e| e.max(f64::MIN_POSITIVE).ln()).collect();
        Ok(LimitStudy {
            base_spec: base,
            beta_sequence: beta_sequence.to_vec(),
            errors,
            order: least_squares_slope(&xs, &ys),
        })
    }

    /// True when every gap is below its predecessor.
    pub fn is_monotone(&self) -> bool {
        self.errors.windows(2).all(|w| w[1] < w[0])
    }

    pub fn pathway_variant(&self) -> Variant {
        if self.beta_sequence.first().is_some_and(|&b| b > 1.0) {
            Variant::I1Beta
        } else {
            Variant::I2Beta
        }
    }
}

fn check_sequence(seq: &[f64]) -> Result<()> {
    if seq.len() < 2 {
        return Err(Error::Domain("a limit study needs at least two beta values".into()));
    }
    let above = seq[0] > 1.0;
    for w in seq.windows(2) {
        let closer = (w[1] - 1.0).abs() < (w[0] - 1.0).abs();
        if !closer || (w[1] > 1.0) != above || w[1] == 1.0 {
            return Err(Error::Domain(format!(
                "beta sequence must approach 1 monotonically from one side ({} then {})",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// `|Γ(1+x) x^w / Γ(1+x+w) − 1|` with `x = 1/(1−β)` and `w = α/δ + s` at each `β`.
///
/// `s` is measured in units of `δ`, i.e. it stands for `s/δ` of the Mellin variable.
pub fn gamma_ratio_limit_check(alpha_over_delta: f64, s: ComplexValue, beta_sequence: &[f64]) -> Result<Vec<f64>> {
    let w = s + alpha_over_delta;
    let one = Complex64::new(1.0, 0.0);
    beta_sequence
        .iter()
        .map(|&beta| {
            if !(beta < 1.0) {
                return Err(Error::Domain(format!("gamma ratio check needs beta < 1, got {beta}")));
            }
            let x = 1.0 / (1.0 - beta);
            Ok((asymptotic_gamma_ratio(x, one, one + w)? - 1.0).norm())
        })
        .collect()
}

/// `|K_β(x) − e^{−a x^δ}|` for the pathway kernel.
pub fn kernel_gap(a: f64, delta: f64, beta: f64, x: f64) -> f64 {
    (pathway_kernel(a, delta, beta, x) - (-a * x.powf(delta)).exp()).abs()
}
