//! The four integral families and their direct quadrature.
//!
//! All families share the form `∫ x^{α−1} K(x) e^{−b x^{−ρ}} dx` with
//!
//! | variant  | kernel `K(x)`                              | range        |
//! |----------|--------------------------------------------|--------------|
//! | `I1`     | `e^{−a x^δ}`                               | `(0, ∞)`     |
//! | `I2`     | `e^{−a x^δ}`                               | `(0, d)`     |
//! | `I1beta` | `[1 + a(β−1) x^δ]^{−1/(β−1)}`, `β > 1`     | `(0, ∞)`     |
//! | `I2beta` | `[1 − a(1−β) x^δ]^{1/(1−β)}`, `β < 1`      | `(0, d_β)`   |
//!
//! with `d_β = [1/(a(1−β))]^{1/δ}`.
//!
//! [`quad_eval`] splits the range at the interior maximum of the integrand.
//! The left part is integrated in `t = x^{−ρ}`, where the factor
//! `e^{−b t}` is an ordinary exponential decay. The right part uses a
//! variant-specific substitution: `u = x^δ` for the exponential tail,
//! a power of `1/x` for the algebraic `I1beta` tail, and a power of the
//! distance to the cutoff for `I2beta`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_to_infinity, QuadOptions, QuadOutput};
use crate::result::{EvalResult, MethodTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    I1,
    I2,
    I1Beta,
    I2Beta,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::I1 => "i1",
            Variant::I2 => "i2",
            Variant::I1Beta => "i1beta",
            Variant::I2Beta => "i2beta",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i1" => Ok(Variant::I1),
            "i2" => Ok(Variant::I2),
            "i1beta" | "i1b" => Ok(Variant::I1Beta),
            "i2beta" | "i2b" => Ok(Variant::I2Beta),
            other => Err(Error::InvalidSpec(format!("unknown variant '{other}'"))),
        }
    }
}

/// Full parameterization of one integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralSpec {
    pub variant: Variant,
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
    pub delta: f64,
    pub rho: f64,
    /// Pathway parameter; only read by the two pathway variants.
    pub beta: Option<f64>,
    /// Upper limit `d` of `I2`. `I2beta` derives its own cutoff.
    pub cutoff: Option<f64>,
}

impl IntegralSpec {
    pub fn i1(alpha: f64, a: f64, b: f64, delta: f64, rho: f64) -> Self {
        IntegralSpec {
            variant: Variant::I1,
            alpha,
            a,
            b,
            delta,
            rho,
            beta: None,
            cutoff: None,
        }
    }

    pub fn i2(alpha: f64, a: f64, b: f64, delta: f64, rho: f64, cutoff: f64) -> Self {
        IntegralSpec {
            variant: Variant::I2,
            cutoff: Some(cutoff),
            ..Self::i1(alpha, a, b, delta, rho)
        }
    }

    pub fn i1_beta(alpha: f64, a: f64, b: f64, delta: f64, rho: f64, beta: f64) -> Self {
        IntegralSpec {
            variant: Variant::I1Beta,
            beta: Some(beta),
            ..Self::i1(alpha, a, b, delta, rho)
        }
    }

    pub fn i2_beta(alpha: f64, a: f64, b: f64, delta: f64, rho: f64, beta: f64) -> Self {
        IntegralSpec {
            variant: Variant::I2Beta,
            beta: Some(beta),
            ..Self::i1(alpha, a, b, delta, rho)
        }
    }

    pub fn with_b(self, b: f64) -> Self {
        IntegralSpec { b, ..self }
    }

    pub fn with_beta(self, beta: f64) -> Self {
        IntegralSpec {
            beta: Some(beta),
            ..self
        }
    }

    /// The classical `I1` with the same `α, a, b, δ, ρ`.
    pub fn classical(self) -> Self {
        Self::i1(self.alpha, self.a, self.b, self.delta, self.rho)
    }

    pub fn beta_value(&self) -> Result<f64> {
        self.beta
            .ok_or_else(|| Error::InvalidSpec(format!("variant {} needs beta", self.variant.as_str())))
    }

    /// Check the parameter invariants, including convergence of the integral.
    pub fn validate(&self) -> Result<()> {
        self.validate_parameters()?;
        if self.variant == Variant::I1Beta {
            let beta = self.beta_value()?;
            if self.alpha * (beta - 1.0) >= self.delta {
                return Err(Error::InvalidSpec(format!(
                    "i1beta diverges at infinity unless alpha*(beta-1) < delta ({} >= {})",
                    self.alpha * (beta - 1.0),
                    self.delta
                )));
            }
        }
        Ok(())
    }

    /// Check the parameter ranges without the convergence condition.
    pub fn validate_parameters(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidSpec(format!("{name} must be finite and > 0, got {v}")))
            }
        };
        positive("alpha", self.alpha)?;
        positive("a", self.a)?;
        positive("delta", self.delta)?;
        positive("rho", self.rho)?;
        if !(self.b >= 0.0 && self.b.is_finite()) {
            return Err(Error::InvalidSpec(format!("b must be finite and >= 0, got {}", self.b)));
        }
        match self.variant {
            Variant::I1 => {}
            Variant::I2 => {
                let d = self
                    .cutoff
                    .ok_or_else(|| Error::InvalidSpec("variant i2 needs a cutoff".into()))?;
                positive("cutoff", d)?;
            }
            Variant::I1Beta => {
                let beta = self.beta_value()?;
                if !(beta > 1.0 && beta.is_finite()) {
                    return Err(Error::InvalidSpec(format!("i1beta needs beta > 1, got {beta}")));
                }
            }
            Variant::I2Beta => {
                let beta = self.beta_value()?;
                if !(beta < 1.0 && beta.is_finite()) {
                    return Err(Error::InvalidSpec(format!("i2beta needs beta < 1, got {beta}")));
                }
            }
        }
        Ok(())
    }

    /// Upper integration limit, if finite.
    pub fn effective_cutoff(&self) -> Option<f64> {
        match self.variant {
            Variant::I2 => self.cutoff,
            Variant::I2Beta => {
                let beta = self.beta?;
                Some((1.0 / (self.a * (1.0 - beta))).powf(1.0 / self.delta))
            }
            _ => None,
        }
    }

    /// `ln K(x)` given `ln x`.
    fn log_kernel_ln(&self, ln_x: f64) -> f64 {
        let xd = (self.delta * ln_x).exp();
        match self.variant {
            Variant::I1 | Variant::I2 => -self.a * xd,
            Variant::I1Beta => {
                let bm1 = self.beta.unwrap_or(f64::NAN) - 1.0;
                -(self.a * bm1 * xd).ln_1p() / bm1
            }
            Variant::I2Beta => {
                let omb = 1.0 - self.beta.unwrap_or(f64::NAN);
                let inner = -self.a * omb * xd;
                if inner <= -1.0 {
                    f64::NEG_INFINITY
                } else {
                    inner.ln_1p() / omb
                }
            }
        }
    }

    /// `ln` of the integrand given `ln x`.
    fn log_integrand_ln(&self, ln_x: f64) -> f64 {
        let screening = if self.b == 0.0 {
            0.0
        } else {
            self.b * (-self.rho * ln_x).exp()
        };
        (self.alpha - 1.0) * ln_x + self.log_kernel_ln(ln_x) - screening
    }

    /// `x · d/dx ln(integrand)` given `ln x`; strictly decreasing in `x`.
    fn log_derivative_ln(&self, ln_x: f64) -> f64 {
        let xd = (self.delta * ln_x).exp();
        let kernel = match self.variant {
            Variant::I1 | Variant::I2 => -self.a * self.delta * xd,
            Variant::I1Beta => {
                let bm1 = self.beta.unwrap_or(f64::NAN) - 1.0;
                -self.a * self.delta * xd / (1.0 + self.a * bm1 * xd)
            }
            Variant::I2Beta => {
                let omb = 1.0 - self.beta.unwrap_or(f64::NAN);
                let rest = 1.0 - self.a * omb * xd;
                if rest <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    -self.a * self.delta * xd / rest
                }
            }
        };
        let screening = if self.b == 0.0 {
            0.0
        } else {
            self.b * self.rho * (-self.rho * ln_x).exp()
        };
        self.alpha - 1.0 + screening + kernel
    }
}

/// Pathway kernel `[1 − a(1−β) x^δ]^{1/(1−β)}` (zero past the cutoff when
/// `β < 1`); `β = 1` gives `e^{−a x^δ}`.
pub fn pathway_kernel(a: f64, delta: f64, beta: f64, x: f64) -> f64 {
    let xd = x.powf(delta);
    if beta == 1.0 {
        return (-a * xd).exp();
    }
    let omb = 1.0 - beta;
    let inner = 1.0 - a * omb * xd;
    if inner <= 0.0 {
        0.0
    } else {
        (inner.ln() / omb).exp()
    }
}

/// Value of the integrand at `x`.
pub fn integrand(spec: &IntegralSpec, x: f64) -> Result<f64> {
    spec.validate()?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("integrand needs x > 0, got {x}")));
    }
    if let Some(d) = spec.effective_cutoff() {
        if x > d {
            return Err(Error::Domain(format!("x = {x} beyond cutoff {d}")));
        }
    }
    Ok(spec.log_integrand_ln(x.ln()).exp())
}

/// Location (as `ln x`) of the interior maximum, or `None` when the
/// integrand is monotone decreasing from `x = 0`.
fn peak_ln_x(spec: &IntegralSpec) -> Option<f64> {
    if spec.b == 0.0 && spec.alpha <= 1.0 {
        return None;
    }
    let upper = spec.effective_cutoff().map(f64::ln);
    let g = |y: f64| spec.log_derivative_ln(y);
    let (mut lo, mut hi);
    let start = match upper {
        Some(u) => u - 1.0,
        None => 0.0,
    };
    if g(start) > 0.0 {
        lo = start;
        hi = start + 1.0;
        let mut step = 1.0;
        loop {
            if let Some(u) = upper {
                if hi >= u {
                    if spec.variant == Variant::I2 {
                        // peak lies beyond the cutoff
                        if g(u) >= 0.0 {
                            return Some(u);
                        }
                        hi = u;
                        break;
                    }
                    hi = 0.5 * (lo + u);
                    if g(hi) <= 0.0 {
                        break;
                    }
                    lo = hi;
                    continue;
                }
            }
            if g(hi) <= 0.0 {
                break;
            }
            lo = hi;
            step *= 2.0;
            hi += step;
            // with a cutoff, hi is pulled back below it on the next pass
            if hi > 700.0 && upper.is_none() {
                return None;
            }
        }
    } else {
        hi = start;
        lo = start - 1.0;
        let mut step = 1.0;
        while g(lo) <= 0.0 {
            hi = lo;
            step *= 2.0;
            lo -= step;
            if lo < -700.0 {
                return None;
            }
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * (1.0 + mid.abs()) {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Split point (as `ln x`) used when no interior peak exists.
fn fallback_split_ln(spec: &IntegralSpec) -> f64 {
    let scale = match spec.variant {
        Variant::I1 | Variant::I2 => -spec.a.ln() / spec.delta,
        Variant::I1Beta => {
            let bm1 = spec.beta.unwrap_or(2.0) - 1.0;
            -(spec.a * bm1).ln() / spec.delta
        }
        Variant::I2Beta => spec.effective_cutoff().map(|d| (0.5 * d).ln()).unwrap_or(0.0),
    };
    match spec.effective_cutoff() {
        Some(d) => scale.min(d.ln()),
        None => scale,
    }
}

/// Tail exponent above which the pathway variants are integrated like `I1`.
const STEEP_TAIL: f64 = 20.0;

/// `∫_{x_split}^∞` in `u = x^δ`, where `e^{−a u}` is a plain exponential.
fn exponential_tail(spec: &IntegralSpec, split: f64, log_ref: f64, opts: &QuadOptions) -> Result<QuadOutput> {
    let delta = spec.delta;
    let u0 = (delta * split).exp();
    let f = |u: f64| {
        let ln_u = u.ln();
        let ln_x = ln_u / delta;
        (spec.log_integrand_ln(ln_x) - log_ref + (1.0 / delta - 1.0) * ln_u).exp() / delta
    };
    integrate_to_infinity(f, u0, 1.0 / spec.a, opts)
}

/// Adaptive quadrature of the integral described by `spec`.
pub fn quad_eval(spec: &IntegralSpec, rel_tol: f64) -> Result<EvalResult> {
    spec.validate()?;
    if !(1e-13..=1e-2).contains(&rel_tol) {
        return Err(Error::Domain(format!(
            "rel_tol must lie in [1e-13, 1e-2], got {rel_tol}"
        )));
    }
    let opts = QuadOptions {
        rel_tol,
        abs_tol: 0.0,
        max_intervals: 4000,
    };
    let cutoff = spec.effective_cutoff();
    let split = peak_ln_x(spec).unwrap_or_else(|| fallback_split_ln(spec));
    let split = match cutoff {
        Some(d) => split.min(d.ln()),
        None => split,
    };
    let x_split = split.exp();
    // everything is integrated relative to the integrand at the split point
    let log_ref = spec.log_integrand_ln(split);
    let mut value = 0.0;
    let mut error = 0.0;
    let mut evaluations = 0usize;

    // left part, (0, x_split]
    if spec.b > 0.0 {
        let rho = spec.rho;
        let t0 = (-rho * split).exp();
        let f = |t: f64| {
            let ln_t = t.ln();
            let ln_x = -ln_t / rho;
            (spec.log_integrand_ln(ln_x) - log_ref - (1.0 / rho + 1.0) * ln_t).exp() / rho
        };
        let rate = spec.b + (spec.alpha / rho + 1.0) / t0;
        let out = integrate_to_infinity(f, t0, 1.0 / rate, &opts)?;
        value += out.value;
        error += out.abs_error;
        evaluations += out.evaluations;
    } else {
        // x = x_split · v^{1/α}: x^{α−1} dx = (x_split^α / α) dv
        let alpha = spec.alpha;
        let f = |v: f64| {
            if v <= 0.0 {
                return (spec.log_kernel_ln(f64::NEG_INFINITY) + alpha * split - alpha.ln() - log_ref).exp();
            }
            let ln_x = split + v.ln() / alpha;
            (spec.log_kernel_ln(ln_x) + alpha * split - alpha.ln() - log_ref).exp()
        };
        let out = integrate(f, 0.0, 1.0, &opts)?;
        value += out.value;
        error += out.abs_error;
        evaluations += out.evaluations;
    }

    // right part
    let right = match spec.variant {
        Variant::I1 => Some(exponential_tail(spec, split, log_ref, &opts)?),
        Variant::I2 => {
            let d = cutoff.expect("validated");
            if x_split < d {
                let f = |x: f64| (spec.log_integrand_ln(x.ln()) - log_ref).exp();
                Some(integrate(f, x_split, d, &opts)?)
            } else {
                None
            }
        }
        Variant::I1Beta if spec.delta / (spec.beta_value()? - 1.0) - spec.alpha > STEEP_TAIL => {
            // tail power so high that the kernel behaves like the exponential
            Some(exponential_tail(spec, split, log_ref, &opts)?)
        }
        Variant::I1Beta => {
            // y = 1/x = w^p flattens the algebraic tail y^{δ/(β−1) − α − 1}
            let bm1 = spec.beta_value()? - 1.0;
            let p = 1.0 / (spec.delta / bm1 - spec.alpha);
            let w_max = (-split / p).exp();
            let f = |w: f64| {
                if w <= 0.0 {
                    return 0.0;
                }
                let ln_w = w.ln();
                let ln_y = p * ln_w;
                (spec.log_integrand_ln(-ln_y) - log_ref - 2.0 * ln_y + (p - 1.0) * ln_w).exp() * p
            };
            Some(integrate(f, 0.0, w_max, &opts)?)
        }
        Variant::I2Beta if 1.0 / (1.0 - spec.beta_value()?) > STEEP_TAIL => {
            // the kernel is negligible long before the cutoff, where it is zeroed
            Some(exponential_tail(spec, split, log_ref, &opts)?)
        }
        Variant::I2Beta => {
            // x = d − w^r with r = 1/(κ+1), κ = 1/(1−β)
            let d = cutoff.expect("validated");
            let omb = 1.0 - spec.beta_value()?;
            let kappa = 1.0 / omb;
            let r = 1.0 / (kappa + 1.0);
            let w_max = (d - x_split).max(0.0).powf(1.0 / r);
            let delta = spec.delta;
            let f = |w: f64| {
                if w <= 0.0 {
                    return 0.0;
                }
                let gap = w.powf(r);
                let frac = gap / d;
                if frac >= 1.0 {
                    return 0.0;
                }
                // 1 − a(1−β)x^δ = 1 − (x/d)^δ, kept accurate near the cutoff
                let inner = -(delta * (-frac).ln_1p()).exp_m1();
                let ln_x = (d - gap).ln();
                let screening = if spec.b == 0.0 {
                    0.0
                } else {
                    spec.b * (-spec.rho * ln_x).exp()
                };
                let log_f = (spec.alpha - 1.0) * ln_x + kappa * inner.ln() - screening;
                (log_f - log_ref).exp() * r * w.powf(r - 1.0)
            };
            Some(integrate(f, 0.0, w_max, &opts)?)
        }
    };
    if let Some(out) = right {
        value += out.value;
        error += out.abs_error;
        evaluations += out.evaluations;
    }

    let scale = log_ref.exp();
    let value = value * scale;
    let error = (error * scale).max(4.0 * f64::EPSILON * value.abs());
    if !value.is_finite() {
        return Err(Error::Domain(format!(
            "integral is not representable (scale e^{log_ref})"
        )));
    }
    Ok(EvalResult::new(value, error, MethodTag::Quadrature, evaluations as u64))
}

/// `|g′(x) + a g(x)^β|` for `g(x) = x^{α₀} [1 − a(1−β)x]^{1/(1−β)}`.
///
/// `g′` is a five-point central difference, so the result is an independent
/// numerical check of `g′ = −a g^β`, which holds exactly when `α₀ = 0`.
pub fn tsallis_derivative_residual(alpha0: f64, a: f64, beta: f64, x: f64) -> Result<f64> {
    if !(beta < 1.0) || !(a > 0.0) {
        return Err(Error::Domain(format!("needs beta < 1 and a > 0 (beta={beta}, a={a})")));
    }
    let support = 1.0 / (a * (1.0 - beta));
    if !(x > 0.0 && x < support) {
        return Err(Error::Domain(format!("x = {x} outside the support (0, {support})")));
    }
    let g = |t: f64| t.powf(alpha0) * pathway_kernel(a, 1.0, beta, t);
    let h = 1e-3 * x.min(support - x).min(1.0);
    let deriv = (-g(x + 2.0 * h) + 8.0 * g(x + h) - 8.0 * g(x - h) + g(x - 2.0 * h)) / (12.0 * h);
    Ok((deriv + a * g(x).powf(beta)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrand_examples() {
        let s = IntegralSpec::i1(1.0, 1.0, 1.0, 1.0, 1.0);
        assert!((integrand(&s, 1.0).unwrap() - (-2.0f64).exp()).abs() < 1e-16);

        let s = IntegralSpec::i2_beta(1.0, 1.0, 1.0, 1.0, 1.0, 0.0);
        let want = 0.5 * (-2.0f64).exp();
        assert!((integrand(&s, 0.5).unwrap() - want).abs() < 1e-16);
        assert!((want - 0.067_667_641_6).abs() < 1e-10);

        let s = IntegralSpec::i1_beta(2.0, 1.0, 0.5, 1.0, 0.5, 2.0);
        // only the integrand is evaluated; the integral itself would diverge
        let want = 4.0 * 0.2 * (-0.25f64).exp();
        let got = spec_integrand_unchecked(&s, 4.0);
        assert!((got - want).abs() < 1e-15);
        assert!((got - 0.6230).abs() < 1e-4);
    }

    fn spec_integrand_unchecked(spec: &IntegralSpec, x: f64) -> f64 {
        spec.log_integrand_ln(x.ln()).exp()
    }

    #[test]
    fn integrand_domain_errors() {
        let s = IntegralSpec::i1(1.0, 1.0, 1.0, 1.0, 1.0);
        assert!(matches!(integrand(&s, 0.0), Err(Error::Domain(_))));
        assert!(matches!(integrand(&s, -1.0), Err(Error::Domain(_))));
        let s = IntegralSpec::i2_beta(1.0, 1.0, 1.0, 1.0, 1.0, 0.5);
        // cutoff 2
        assert!(integrand(&s, 2.0).unwrap() == 0.0);
        assert!(matches!(integrand(&s, 2.1), Err(Error::Domain(_))));
        let s = IntegralSpec::i2(1.0, 1.0, 1.0, 1.0, 1.0, 3.0);
        assert!(matches!(integrand(&s, 3.5), Err(Error::Domain(_))));
    }

    #[test]
    fn spec_validation() {
        assert!(IntegralSpec::i1_beta(1.0, 1.0, 1.0, 1.0, 1.0, 0.5).validate().is_err());
        assert!(IntegralSpec::i2_beta(1.0, 1.0, 1.0, 1.0, 1.0, 1.5).validate().is_err());
        // α(β−1) < δ is required for convergence at infinity
        assert!(IntegralSpec::i1_beta(1.0, 1.0, 1.0, 1.0, 1.0, 2.0).validate().is_err());
        assert!(IntegralSpec::i1_beta(1.0, 1.0, 1.0, 1.0, 1.0, 1.9).validate().is_ok());
        let mut s = IntegralSpec::i2(1.0, 1.0, 1.0, 1.0, 1.0, 2.0);
        s.cutoff = None;
        assert!(s.validate().is_err());
        assert!(IntegralSpec::i1(0.0, 1.0, 1.0, 1.0, 1.0).validate().is_err());
        assert!(IntegralSpec::i1(1.0, 1.0, -1.0, 1.0, 1.0).validate().is_err());
        let s = IntegralSpec::i2_beta(1.0, 2.0, 1.0, 2.0, 1.0, 0.5);
        assert!((s.effective_cutoff().unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_b_zero_is_a_gamma_integral() {
        let s = IntegralSpec::i1(1.0, 1.0, 0.0, 1.0, 1.0);
        let r = quad_eval(&s, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        // Γ(α/δ)/(δ a^{α/δ}) with α=2.5, δ=1.5, a=0.7
        let s = IntegralSpec::i1(2.5, 0.7, 0.0, 1.5, 0.5);
        let r = quad_eval(&s, 1e-12).unwrap();
        let want = 0.902_745_292_950_933_6_f64 / (1.5 * 0.7f64.powf(2.5 / 1.5));
        assert!((r.value - want).abs() < 1e-11 * want, "{} vs {}", r.value, want);
        // α < 1 keeps an integrable singularity at 0
        let s = IntegralSpec::i1(0.5, 1.0, 0.0, 1.0, 1.0);
        let r = quad_eval(&s, 1e-10).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt()).abs() < 1e-9);
    }

    // Reference values from tools/oracles.py.
    #[test]
    fn quadrature_matches_references() {
        let cases = [
            (IntegralSpec::i1(1.0, 1.0, 1.0, 1.0, 1.0), 0.279_731_763_633_044_85),
            (
                IntegralSpec::i2_beta(1.0, 1.0, 1.0, 1.0, 1.0, 0.0),
                0.038_803_539_578_161_911,
            ),
            (
                IntegralSpec::i1_beta(1.0, 1.0, 1.0, 1.0, 1.0, 1.5),
                1.077_089_367_516_269_5,
            ),
            (IntegralSpec::i1(1.0, 1.0, 1.0, 1.0, 0.5), 0.293_126_762_771_955_55),
            (IntegralSpec::i1(2.5, 0.7, 1.3, 1.5, 0.5), 0.371_292_210_252_275_67),
            (
                IntegralSpec::i2_beta(1.0, 1.0, 1.0, 1.0, 1.0, 0.5),
                0.097_355_919_265_088_336,
            ),
            (
                IntegralSpec::i2_beta(1.3, 0.8, 0.6, 2.0, 1.0, 0.25),
                0.168_141_514_371_245_82,
            ),
        ];
        for (spec, want) in cases {
            let r = quad_eval(&spec, 1e-12).unwrap();
            assert!((r.value - want).abs() < 1e-11 * want, "{spec:?}: {} vs {want}", r.value);
            assert!(r.abs_error_estimate < 1e-10 * want);
            assert_eq!(r.method, MethodTag::Quadrature);
        }
    }

    #[test]
    fn cutoff_integral_is_bounded_by_full_range() {
        let full = quad_eval(&IntegralSpec::i1(1.5, 1.0, 0.8, 1.0, 0.5), 1e-12)
            .unwrap()
            .value;
        let mut prev = 0.0;
        for d in [0.2, 0.5, 1.0, 3.0, 10.0, 60.0] {
            let v = quad_eval(&IntegralSpec::i2(1.5, 1.0, 0.8, 1.0, 0.5, d), 1e-12)
                .unwrap()
                .value;
            assert!(v > prev && v <= full * (1.0 + 1e-12), "d={d}");
            prev = v;
        }
        assert!((prev - full).abs() < 1e-12 * full);
    }

    #[test]
    fn tolerance_range_is_enforced() {
        let s = IntegralSpec::i1(1.0, 1.0, 1.0, 1.0, 1.0);
        assert!(quad_eval(&s, 1e-14).is_err());
        assert!(quad_eval(&s, 0.1).is_err());
    }

    #[test]
    fn tsallis_derivative_examples() {
        assert!(tsallis_derivative_residual(0.0, 1.0, 0.999, 0.1).unwrap() < 1e-6);
        assert!(tsallis_derivative_residual(0.0, 1.0, 0.0, 0.5).unwrap() < 1e-12);
        assert!(tsallis_derivative_residual(0.0, 2.0, 0.5, 0.2).unwrap() < 1e-8);
        // the property needs α₀ = 0
        assert!(tsallis_derivative_residual(1.0, 2.0, 0.5, 0.2).unwrap() > 1e-2);
        assert!(tsallis_derivative_residual(0.0, 2.0, 0.5, 1.5).is_err());
        assert!(tsallis_derivative_residual(0.0, 2.0, 1.5, 0.2).is_err());
    }
}
