//! Differential equations satisfied by the reduced integrals.
//!
//! A G-function `G^{m,n}_{p,q}(z)` is annihilated by
//!
//! ```text
//!   L = (−1)^{p−m−n} z Π_j (η − a_j + 1) − Π_j (η − b_j),    η = z d/dz.
//! ```
//!
//! Two independent checks are provided. [`mellin_operator_identity`] checks the
//! statement on the Mellin side, where `η` acts on `z^{−s}` as multiplication
//! by `−s`, so `L G = 0` becomes an identity between gamma products.
//! [`fd_residual`] applies `L` to values of the integral itself, taking
//! derivatives in `t = ln z` by finite differences.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::ComplexValue;
use crate::integral::{quad_eval, IntegralSpec, Variant};
use crate::meijer::MeijerGParams;
use crate::representations::{integer_ratio, reduce};

/// `sign · z · Π(η − upper_shifts[j]) − Π(η − lower_shifts[j])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GOperator {
    pub sign: i32,
    pub upper_shifts: Vec<f64>,
    pub lower_shifts: Vec<f64>,
    pub m_order: usize,
}

impl GOperator {
    /// The operator of the G-equation for `g`.
    pub fn from_g(g: &MeijerGParams) -> Self {
        let parity = (g.p as i64 - g.m as i64 - g.n as i64).rem_euclid(2);
        GOperator {
            sign: if parity == 0 { 1 } else { -1 },
            upper_shifts: g.upper.iter().map(|a| a.re - 1.0).collect(),
            lower_shifts: g.lower.iter().map(|b| b.re).collect(),
            m_order: g.q,
        }
    }

    /// Field-wise comparison with absolute tolerance `tol` on the shifts.
    pub fn approx_eq(&self, other: &GOperator, tol: f64) -> bool {
        let close = |x: &[f64], y: &[f64]| x.len() == y.len() && x.iter().zip(y).all(|(a, b)| (a - b).abs() <= tol);
        self.sign == other.sign
            && self.m_order == other.m_order
            && close(&self.upper_shifts, &other.upper_shifts)
            && close(&self.lower_shifts, &other.lower_shifts)
    }

    /// Coefficients `c_k` of `Π(η − r_j) = Σ c_k η^k`.
    fn expand(roots: &[f64]) -> Vec<f64> {
        let mut c = vec![1.0];
        for &r in roots {
            let mut next = vec![0.0; c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= r * ck;
            }
            c = next;
        }
        c
    }

    pub fn lower_polynomial(&self) -> Vec<f64> {
        Self::expand(&self.lower_shifts)
    }

    pub fn upper_polynomial(&self) -> Vec<f64> {
        Self::expand(&self.upper_shifts)
    }

    /// Highest derivative in `t` the operator needs.
    pub fn order(&self) -> usize {
        self.lower_shifts.len().max(self.upper_shifts.len())
    }
}

/// Operator stated by the representation theorems for `spec`.
pub fn operator_from_theorem(spec: &IntegralSpec) -> Result<GOperator> {
    spec.validate_parameters()?;
    let m = integer_ratio(spec.delta, spec.rho)?;
    let mf = m as f64;
    let theta = spec.alpha / spec.delta;
    let mut lower: Vec<f64> = (0..m).map(|k| k as f64 / mf).collect();
    lower.push(theta);
    let odd = |k: usize| if k.is_multiple_of(2) { 1 } else { -1 };
    let (sign, upper) = match spec.variant {
        Variant::I1 => (odd(m + 1), vec![]),
        Variant::I1Beta => (odd(m + 1), vec![theta - 1.0 / (spec.beta_value()? - 1.0)]),
        Variant::I2Beta => (odd(m), vec![1.0 / (1.0 - spec.beta_value()?) + theta]),
        Variant::I2 => {
            return Err(Error::UnsupportedVariant(
                "i2 with a generic cutoff has no G-equation".into(),
            ))
        }
    };
    Ok(GOperator {
        sign,
        upper_shifts: upper,
        lower_shifts: lower,
        m_order: m + 1,
    })
}

/// Max over `s_samples` of `|sign·φ(s+1)Π(−a_j − s) / (φ(s)Π(−b_j − s)) − 1|`,
/// with `φ` the Barnes integrand of `g` and `a_j = upper_shifts[j] + 1`,
/// `b_j = lower_shifts[j]` taken from `op`.
pub fn mellin_operator_identity(op: &GOperator, g: &MeijerGParams, s_samples: &[ComplexValue]) -> Result<f64> {
    let mut phi = g.to_mellin();
    phi.base = 1.0;
    let mut worst: f64 = 0.0;
    for &s in s_samples {
        let shift = phi.log_phi(s + 1.0)? - phi.log_phi(s)?;
        let mut ratio = shift.exp() * op.sign as f64;
        for &u in &op.upper_shifts {
            ratio *= -(u + 1.0) - s;
        }
        for &b in &op.lower_shifts {
            let f = -b - s;
            if f.norm() == 0.0 {
                return Err(Error::Pole { re: s.re, im: s.im });
            }
            ratio /= f;
        }
        worst = worst.max((ratio - 1.0).norm());
    }
    Ok(worst)
}

/// Where and how finely the finite-difference check samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OdeProbe {
    pub z_points: Vec<f64>,
    /// Step in `t = ln z`.
    pub fd_step: f64,
    /// Number of points of the central stencil (odd).
    pub stencil_order: usize,
}

/// Fornberg weights: `w[d][i]` approximates the `d`-th derivative at `x0`
/// from values at `xs[i]`.
pub fn fornberg_weights(x0: f64, xs: &[f64], max_derivative: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; max_derivative + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(max_derivative);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Accuracy order of the central `points`-point stencil for derivatives up to `max_derivative`.
pub fn stencil_accuracy(points: usize, max_derivative: usize) -> usize {
    let r = points / 2;
    (1..=max_derivative)
        .map(|d| {
            let raw = 2 * r + 1 - d;
            raw + raw % 2
        })
        .min()
        .unwrap_or(2 * r)
}

struct Applied {
    residual: f64,
    scale: f64,
    noise: f64,
}

/// Apply `op` at `t` to a function given by values `f(t + k h)`.
fn apply_fd<F: Fn(f64) -> Result<f64>>(
    op: &GOperator,
    f: &F,
    t: f64,
    h: f64,
    points: usize,
    rel_noise: f64,
) -> Result<Applied> {
    let order = op.order();
    if points.is_multiple_of(2) || points < order + 2 {
        return Err(Error::Domain(format!(
            "stencil needs an odd number of points above {} (got {points})",
            order + 1
        )));
    }
    let r = (points / 2) as i64;
    let offsets: Vec<f64> = (-r..=r).map(|k| k as f64).collect();
    // weights on the unit grid, scaled by h^{-d} below
    let w = fornberg_weights(0.0, &offsets, order);
    let values: Vec<f64> = offsets.iter().map(|&k| f(t + k * h)).collect::<Result<_>>()?;
    let fmax = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let derivs: Vec<f64> = (0..=order)
        .map(|d| w[d].iter().zip(&values).map(|(wi, vi)| wi * vi).sum::<f64>() / h.powi(d as i32))
        .collect();
    let weight_norms: Vec<f64> = (0..=order)
        .map(|d| w[d].iter().map(|x| x.abs()).sum::<f64>() / h.powi(d as i32))
        .collect();
    let z = t.exp();
    let up = op.upper_polynomial();
    let low = op.lower_polynomial();
    let z_term = op.sign as f64 * z * up.iter().zip(&derivs).map(|(c, d)| c * d).sum::<f64>();
    let eta_term = low.iter().zip(&derivs).map(|(c, d)| c * d).sum::<f64>();
    let noise = rel_noise
        * fmax
        * (z * up.iter().zip(&weight_norms).map(|(c, n)| c.abs() * n).sum::<f64>()
            + low.iter().zip(&weight_norms).map(|(c, n)| c.abs() * n).sum::<f64>());
    Ok(Applied {
        residual: (z_term - eta_term).abs(),
        scale: z_term.abs() + eta_term.abs(),
        noise,
    })
}

fn normalized(a: &Applied) -> f64 {
    if a.scale == 0.0 {
        0.0
    } else {
        a.residual / a.scale
    }
}

/// Residuals `|L f| / (|z-term| + |η-term|)` for an arbitrary function of
/// `t = ln z`, whose values carry relative noise around `rel_noise`.
pub fn fd_residual_fn<F: Fn(f64) -> Result<f64>>(
    op: &GOperator,
    f: F,
    probe: &OdeProbe,
    rel_noise: f64,
) -> Result<Vec<f64>> {
    let h = probe.fd_step;
    if !(h > 0.0) {
        return Err(Error::Domain(format!("fd_step must be > 0, got {h}")));
    }
    let mut out = Vec::with_capacity(probe.z_points.len());
    for &z in &probe.z_points {
        if !(z > 0.0) {
            return Err(Error::Domain(format!("z points must be > 0, got {z}")));
        }
        let t = z.ln();
        let coarse = apply_fd(op, &f, t, h, probe.stencil_order, rel_noise)?;
        let fine = apply_fd(op, &f, t, 0.5 * h, probe.stencil_order, rel_noise)?;
        let (rc, rf) = (normalized(&coarse), normalized(&fine));
        // halving did not help and the noise bound reaches the acceptance level
        let noisy = fine.noise >= NOISE_LIMIT * fine.scale;
        if rf >= rc && rc > 0.0 && noisy {
            return Err(Error::StepTooSmall(h));
        }
        out.push(rc);
    }
    Ok(out)
}

/// The scaled integral `f(z) = I(b(z)) / prefactor` as a function of `t = ln z`.
fn theorem_function(spec: &IntegralSpec) -> Result<impl Fn(f64) -> Result<f64>> {
    let form = reduce(spec)?;
    let m = form.m as f64;
    let c = match spec.variant {
        Variant::I1 => spec.a,
        Variant::I1Beta => spec.a * (spec.beta_value()? - 1.0),
        Variant::I2Beta => spec.a * (1.0 - spec.beta_value()?),
        Variant::I2 => unreachable!("reduce rejects i2"),
    };
    let base = *spec;
    let inv_prefactor = (-form.log_prefactor).exp();
    Ok(move |t: f64| {
        // z = c b^m / m^m
        let b = (t + m * m.ln() - c.ln()).exp().powf(1.0 / m);
        Ok(quad_eval(&base.with_b(b), QUAD_TOL)?.value * inv_prefactor)
    })
}

const QUAD_TOL: f64 = 1e-13;
const NOISE_LIMIT: f64 = 1e-3;
/// Relative accuracy of the integral values fed to the stencils.
const VALUE_NOISE: f64 = 1e-14;

/// Finite-difference residual of `op` applied to the theorem's scaled integral.
pub fn fd_residual(op: &GOperator, spec: &IntegralSpec, probe: &OdeProbe) -> Result<Vec<f64>> {
    let f = theorem_function(spec)?;
    fd_residual_fn(op, f, probe, VALUE_NOISE)
}

/// Residuals over a sequence of steps and the fitted log-log slope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinementStudy {
    pub steps: Vec<f64>,
    pub residuals: Vec<f64>,
    pub slope: f64,
    pub expected_slope: f64,
}

/// Steps whose residual is within 3× of the value-noise bound are left out
/// of the fit (and of the returned lists); at least three must remain.
pub fn refinement_study(
    op: &GOperator,
    spec: &IntegralSpec,
    z: f64,
    stencil_order: usize,
    steps: &[f64],
) -> Result<RefinementStudy> {
    let f = theorem_function(spec)?;
    let t = z.ln();
    let applied: Vec<(f64, Applied)> = steps
        .iter()
        .map(|&h| apply_fd(op, &f, t, h, stencil_order, VALUE_NOISE).map(|a| (h, a)))
        .collect::<Result<_>>()?;
    let kept: Vec<(f64, f64)> = applied
        .iter()
        .filter(|(_, a)| a.residual > 3.0 * a.noise)
        .map(|(h, a)| (*h, normalized(a)))
        .collect();
    if kept.len() < 3 {
        let smallest = steps.iter().cloned().fold(f64::INFINITY, f64::min);
        return Err(Error::StepTooSmall(smallest));
    }
    let xs: Vec<f64> = kept.iter().map(|(h, _)| h.ln()).collect();
    let ys: Vec<f64> = kept.iter().map(|(_, r)| r.max(f64::MIN_POSITIVE).ln()).collect();
    Ok(RefinementStudy {
        steps: kept.iter().map(|k| k.0).collect(),
        residuals: kept.iter().map(|k| k.1).collect(),
        slope: least_squares_slope(&xs, &ys),
        expected_slope: stencil_accuracy(stencil_order, op.order()) as f64,
    })
}

pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Sample points `c + i t` on a line inside the strip of `g`.
pub fn strip_samples(g: &MeijerGParams, ts: &[f64]) -> Vec<ComplexValue> {
    let (lo, hi) = g.to_mellin().pole_bounds();
    let c = if hi.is_finite() { 0.5 * (lo + hi) } else { lo + 0.5 };
    ts.iter().map(|&t| Complex64::new(c, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_operators() {
        let op = operator_from_theorem(&IntegralSpec::i1(1.0, 1.0, 1.0, 1.0, 1.0)).unwrap();
        assert_eq!(op.sign, 1);
        assert_eq!(op.lower_shifts, vec![0.0, 1.0]);
        assert!(op.upper_shifts.is_empty());

        // the integral diverges for α(β−1) = δ but the operator is still defined
        let op = operator_from_theorem(&IntegralSpec::i1_beta(1.0, 1.0, 1.0, 1.0, 1.0, 2.0)).unwrap();
        assert_eq!(op.sign, 1);
        assert_eq!(op.upper_shifts, vec![0.0]);
        assert_eq!(op.lower_shifts, vec![0.0, 1.0]);

        let op = operator_from_theorem(&IntegralSpec::i2_beta(1.0, 1.0, 1.0, 1.0, 0.5, 0.5)).unwrap();
        assert_eq!(op.sign, 1);
        assert_eq!(op.m_order, 3);
    }

    #[test]
    fn operator_matches_reduction() {
        let specs = [
            IntegralSpec::i1(1.3, 0.7, 1.1, 1.0, 0.5),
            IntegralSpec::i1_beta(1.3, 0.7, 1.1, 1.5, 0.5, 1.2),
            IntegralSpec::i2_beta(1.3, 0.7, 1.1, 0.9, 0.3, 0.4),
        ];
        for spec in specs {
            let a = operator_from_theorem(&spec).unwrap();
            let b = GOperator::from_g(&reduce(&spec).unwrap().g);
            assert!(a.approx_eq(&b, 1e-14), "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn polynomial_expansion() {
        let op = GOperator {
            sign: 1,
            upper_shifts: vec![],
            lower_shifts: vec![0.0, 1.0],
            m_order: 2,
        };
        // η(η − 1) = η² − η
        assert_eq!(op.lower_polynomial(), vec![0.0, -1.0, 1.0]);
        assert_eq!(op.upper_polynomial(), vec![1.0]);
    }

    #[test]
    fn fornberg_central_weights() {
        let w = fornberg_weights(0.0, &[-2.0, -1.0, 0.0, 1.0, 2.0], 2);
        let d1 = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
        let d2 = [-1.0 / 12.0, 4.0 / 3.0, -2.5, 4.0 / 3.0, -1.0 / 12.0];
        for i in 0..5 {
            assert!((w[1][i] - d1[i]).abs() < 1e-15);
            assert!((w[2][i] - d2[i]).abs() < 1e-14);
        }
        assert_eq!(stencil_accuracy(5, 2), 4);
        assert_eq!(stencil_accuracy(7, 3), 4);
        assert_eq!(stencil_accuracy(3, 2), 2);
    }

    #[test]
    fn mellin_identity_examples() {
        let spec = IntegralSpec::i1(1.0, 1.0, 1.0, 1.0, 1.0);
        let op = operator_from_theorem(&spec).unwrap();
        let g = reduce(&spec).unwrap().g;
        let r = mellin_operator_identity(&op, &g, &[Complex64::new(0.7, 2.0)]).unwrap();
        assert!(r < 1e-12);
        let mut bad = op.clone();
        bad.lower_shifts[1] += 1e-3;
        let r = mellin_operator_identity(&bad, &g, &[Complex64::new(0.7, 2.0)]).unwrap();
        assert!(r > 1e-4);
    }

    #[test]
    fn fd_zero_function() {
        let op = operator_from_theorem(&IntegralSpec::i1(1.0, 1.0, 1.0, 1.0, 1.0)).unwrap();
        let probe = OdeProbe {
            z_points: vec![0.5, 1.0],
            fd_step: 1e-2,
            stencil_order: 5,
        };
        let r = fd_residual_fn(&op, |_| Ok(0.0), &probe, 1e-14).unwrap();
        assert_eq!(r, vec![0.0, 0.0]);
    }

    #[test]
    fn fd_examples() {
        let spec = IntegralSpec::i1(1.0, 1.0, 1.0, 1.0, 1.0);
        let op = operator_from_theorem(&spec).unwrap();
        let probe = OdeProbe {
            z_points: vec![1.0],
            fd_step: 1e-2,
            stencil_order: 5,
        };
        let r = fd_residual(&op, &spec, &probe).unwrap();
        assert!(r[0] < 1e-4, "{r:?}");

        let spec = IntegralSpec::i1(1.0, 1.0, 1.0, 1.0, 0.5);
        let op = operator_from_theorem(&spec).unwrap();
        let probe = OdeProbe {
            z_points: vec![0.5, 1.0, 2.0],
            fd_step: 1e-2,
            stencil_order: 7,
        };
        let r = fd_residual(&op, &spec, &probe).unwrap();
        assert!(r.iter().all(|&x| x < 1e-3), "{r:?}");
    }

    #[test]
    fn noise_dominated_step_is_reported() {
        let spec = IntegralSpec::i1(1.0, 1.0, 1.0, 1.0, 1.0);
        let op = operator_from_theorem(&spec).unwrap();
        let probe = OdeProbe {
            z_points: vec![1.0],
            fd_step: 1e-7,
            stencil_order: 5,
        };
        assert!(matches!(fd_residual(&op, &spec, &probe), Err(Error::StepTooSmall(_))));
    }
}
