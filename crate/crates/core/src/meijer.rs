//! Meijer G-functions: parameters, contour form and residue series.
//!
//! ```text
//!                            1   ⌠  Π_{j≤m} Γ(b_j + s) Π_{k≤n} Γ(1 − a_k − s)
//!   G^{m,n}_{p,q}(z | a; b) = ─── │  ───────────────────────────────────────── z^{−s} ds
//!                           2πi ⌡L Π_{j>m} Γ(1 − b_j − s) Π_{k>n} Γ(a_k + s)
//! ```
//!
//! The residue series closes the contour to the left and sums the residues
//! at `s = −b_j − k`. It is only used when every lower parameter is in the
//! numerator (`m = q`) and `p < q`, which covers the decaying shapes
//! `G^{q,0}_{0,q}`, `G^{q,1}_{1,q}` and `G^{q,0}_{1,q}`.
//!
//! Real parameters are summed in double-double arithmetic: each pole family
//! alternates with terms as large as `e^{q z^{1/q}}` while the sum can be far
//! smaller, and plain doubles lose most digits once `z` reaches a few units.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::gamma::{is_pole, log_gamma, ComplexValue};
use crate::mellin::{contour_eval_auto, GammaFactor, MellinIntegrand};
use crate::result::{EvalResult, MethodTag};

/// Two lower parameters closer than this to an integer offset share poles.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-9;

const CIRCLE_NODES: usize = 64;
const STOP_RUN: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeijerGParams {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub upper: Vec<ComplexValue>,
    pub lower: Vec<ComplexValue>,
    pub z: f64,
}

fn near_integer(d: ComplexValue) -> Option<i64> {
    let r = d.re.round();
    if (d.re - r).abs() < COINCIDENCE_TOLERANCE && d.im.abs() < COINCIDENCE_TOLERANCE {
        Some(r as i64)
    } else {
        None
    }
}

impl MeijerGParams {
    pub fn new(m: usize, n: usize, upper: Vec<ComplexValue>, lower: Vec<ComplexValue>, z: f64) -> Result<Self> {
        let g = MeijerGParams {
            m,
            n,
            p: upper.len(),
            q: lower.len(),
            upper,
            lower,
            z,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn real(m: usize, n: usize, upper: &[f64], lower: &[f64], z: f64) -> Result<Self> {
        let c = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(m, n, c(upper), c(lower), z)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p != self.upper.len() || self.q != self.lower.len() {
            return Err(Error::Domain("p, q must match the parameter list lengths".into()));
        }
        if self.m > self.q || self.n > self.p {
            return Err(Error::Domain(format!(
                "need m <= q and n <= p (m={}, n={}, p={}, q={})",
                self.m, self.n, self.p, self.q
            )));
        }
        if !(self.z > 0.0 && self.z.is_finite()) {
            return Err(Error::Domain(format!("z must be finite and > 0, got {}", self.z)));
        }
        for b in &self.lower[..self.m] {
            for a in &self.upper[..self.n] {
                if let Some(k) = near_integer(*a - *b) {
                    if k >= 1 {
                        return Err(Error::Domain(format!(
                            "poles of Γ({b} + s) and Γ(1 − {a} − s) coincide; no separating contour"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_real(&self) -> bool {
        self.upper.iter().chain(&self.lower).all(|v| v.im == 0.0)
    }

    /// The Barnes integrand `φ(s) z^{−s}`.
    pub fn to_mellin(&self) -> MellinIntegrand {
        let one = Complex64::new(1.0, 0.0);
        MellinIntegrand {
            num: self.lower[..self.m]
                .iter()
                .map(|&b| GammaFactor::complex(b, 1.0))
                .collect(),
            num_reflected: self.upper[..self.n]
                .iter()
                .map(|&a| GammaFactor::complex(one - a, 1.0))
                .collect(),
            den: self.upper[self.n..]
                .iter()
                .map(|&a| GammaFactor::complex(a, 1.0))
                .collect(),
            den_reflected: self.lower[self.m..]
                .iter()
                .map(|&b| GammaFactor::complex(one - b, 1.0))
                .collect(),
            base: self.z,
            log_prefactor: 0.0,
        }
    }

    fn check_series_shape(&self) -> Result<()> {
        if self.m != self.q || self.p >= self.q {
            return Err(Error::UnsupportedVariant(format!(
                "residue series needs m = q and p < q, got G^{{{},{}}}_{{{},{}}}",
                self.m, self.n, self.p, self.q
            )));
        }
        Ok(())
    }

    /// First pair of lower parameters whose pole families overlap.
    pub fn coincident_pair(&self) -> Option<(ComplexValue, ComplexValue)> {
        for i in 0..self.m {
            for j in (i + 1)..self.m {
                if near_integer(self.lower[i] - self.lower[j]).is_some() {
                    return Some((self.lower[i], self.lower[j]));
                }
            }
        }
        None
    }

    /// Index groups of lower parameters that differ by integers.
    fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        'next: for j in 0..self.m {
            for c in out.iter_mut() {
                if near_integer(self.lower[c[0]] - self.lower[j]).is_some() {
                    c.push(j);
                    continue 'next;
                }
            }
            out.push(vec![j]);
        }
        out
    }
}

fn dd(x: f64) -> DoubleDouble {
    DoubleDouble::from_f64(x)
}

/// Log-magnitude and sign of the first residue of family `j`, in double-double.
fn dd_leading(g: &MeijerGParams, j: usize) -> Result<Option<(DoubleDouble, f64)>> {
    let bj = g.lower[j].re;
    let mut log = dd(bj) * dd(g.z).ln();
    let mut sign = 1.0;
    for i in 0..g.q {
        if i == j {
            continue;
        }
        let (lg, s) = (dd(g.lower[i].re) - dd(bj))
            .ln_gamma()
            .ok_or(Error::CoincidentPole(g.lower[i].re, bj))?;
        log += lg;
        sign *= s;
    }
    for (l, a) in g.upper.iter().enumerate() {
        if l < g.n {
            let (lg, s) = (dd(1.0) - dd(a.re) + dd(bj)).ln_gamma().ok_or(Error::Pole {
                re: 1.0 - a.re + bj,
                im: 0.0,
            })?;
            log += lg;
            sign *= s;
        } else {
            match (dd(a.re) - dd(bj)).ln_gamma() {
                Some((lg, s)) => {
                    log = log - lg;
                    sign *= s;
                }
                // 1/Γ at a pole: the whole family vanishes
                None => return Ok(None),
            }
        }
    }
    Ok(Some((log, sign)))
}

/// `t_{k+1} / t_k` within family `j`.
fn dd_ratio(g: &MeijerGParams, j: usize, k: usize) -> DoubleDouble {
    let bj = dd(g.lower[j].re);
    let kk = k as f64;
    let mut num = dd(-g.z);
    let mut den = dd(kk + 1.0);
    for i in 0..g.q {
        if i != j {
            den *= dd(g.lower[i].re) - bj - (kk + 1.0);
        }
    }
    for (l, a) in g.upper.iter().enumerate() {
        if l < g.n {
            num *= dd(1.0) - dd(a.re) + bj + kk;
        } else {
            num *= dd(a.re) - bj - (kk + 1.0);
        }
    }
    num / den
}

struct FamilySum {
    value: f64,
    abs_sum: f64,
    terms: u64,
}

/// Sum one or more simple-pole families (indices `families`) in double-double.
fn dd_families(g: &MeijerGParams, families: &[usize], max_terms: usize) -> Result<FamilySum> {
    let mut leads = Vec::new();
    for &j in families {
        if let Some(l) = dd_leading(g, j)? {
            leads.push((j, l));
        }
    }
    if leads.is_empty() {
        return Ok(FamilySum {
            value: 0.0,
            abs_sum: 0.0,
            terms: 0,
        });
    }
    let log_max = leads
        .iter()
        .map(|(_, (l, _))| *l)
        .fold(leads[0].1 .0, |a, b| if b > a { b } else { a });
    let mut total = DoubleDouble::ZERO;
    let mut abs_sum = 0.0;
    let mut terms = 0u64;
    for (j, (log, sign)) in leads {
        let mut t = (log - log_max).exp() * sign;
        let mut largest = t.abs().to_f64();
        let mut quiet = 0;
        let mut growing = 0;
        let mut k = 0;
        loop {
            total += t;
            let mag = t.abs().to_f64();
            abs_sum += mag;
            terms += 1;
            largest = largest.max(mag);
            if mag <= 1e-34 * largest {
                quiet += 1;
                if quiet >= STOP_RUN {
                    break;
                }
            } else {
                quiet = 0;
            }
            if k >= max_terms {
                return Err(Error::Divergence(max_terms));
            }
            let next = t * dd_ratio(g, j, k);
            if next.abs().to_f64() > mag && mag > 0.0 {
                growing += 1;
                if growing >= max_terms {
                    return Err(Error::Divergence(growing));
                }
            } else {
                growing = 0;
            }
            t = next;
            k += 1;
        }
    }
    let scale = log_max.to_f64().exp();
    Ok(FamilySum {
        value: total.to_f64() * scale,
        abs_sum: abs_sum * scale,
        terms,
    })
}

/// Complex-parameter version of [`dd_families`], in double precision.
fn complex_families(g: &MeijerGParams, families: &[usize], max_terms: usize) -> Result<(ComplexValue, f64, u64)> {
    let one = Complex64::new(1.0, 0.0);
    let zc = Complex64::new(g.z, 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut terms = 0u64;
    for &j in families {
        let bj = g.lower[j];
        let mut log = bj * g.z.ln();
        let mut vanishes = false;
        for i in 0..g.q {
            if i != j {
                log += log_gamma(g.lower[i] - bj)?;
            }
        }
        for (l, a) in g.upper.iter().enumerate() {
            if l < g.n {
                log += log_gamma(one - a + bj)?;
            } else if is_pole(a - bj) {
                vanishes = true;
            } else {
                log -= log_gamma(a - bj)?;
            }
        }
        if vanishes {
            continue;
        }
        let mut t = log.exp();
        let mut largest = t.norm();
        let mut quiet = 0;
        let mut k = 0usize;
        loop {
            total += t;
            abs_sum += t.norm();
            terms += 1;
            largest = largest.max(t.norm());
            if t.norm() <= 1e-18 * largest {
                quiet += 1;
                if quiet >= STOP_RUN {
                    break;
                }
            } else {
                quiet = 0;
            }
            if k >= max_terms {
                return Err(Error::Divergence(max_terms));
            }
            let kk = k as f64;
            let mut ratio = -zc / (kk + 1.0);
            for i in 0..g.q {
                if i != j {
                    ratio /= g.lower[i] - bj - (kk + 1.0);
                }
            }
            for (l, a) in g.upper.iter().enumerate() {
                ratio *= if l < g.n {
                    one - a + bj + kk
                } else {
                    a - bj - (kk + 1.0)
                };
            }
            t *= ratio;
            k += 1;
        }
    }
    Ok((total, abs_sum, terms))
}

/// Residue of `φ(s) z^{−s}` summed over all poles inside a circle.
fn circle_residue(phi: &MellinIntegrand, center: ComplexValue, radius: f64) -> Result<(ComplexValue, f64)> {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut abs = 0.0;
    for k in 0..CIRCLE_NODES {
        let w = Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / CIRCLE_NODES as f64);
        let v = phi.integrand(center + w)? * w;
        acc += v;
        abs += v.norm();
    }
    let n = CIRCLE_NODES as f64;
    Ok((acc / n, abs / n))
}

/// Distance from `s` to the nearest left pole that is not one of `skip`.
fn nearest_other_pole(g: &MeijerGParams, s: ComplexValue, skip: &[usize]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, b) in g.lower[..g.m].iter().enumerate() {
        if skip.contains(&i) {
            continue;
        }
        // poles −b − k, k ≥ 0: nearest k to −Re(s) − Re(b)
        let k = (-(s.re) - b.re).round().max(0.0);
        for kk in [k - 1.0, k, k + 1.0] {
            if kk >= 0.0 {
                best = best.min((s + b + kk).norm());
            }
        }
    }
    for a in &g.upper[..g.n] {
        let k = (s.re - 1.0 + a.re).round().max(0.0);
        for kk in [k - 1.0, k, k + 1.0] {
            if kk >= 0.0 {
                best = best.min((s - (1.0 - a + kk)).norm());
            }
        }
    }
    best
}

/// Sum of the residues of one family cluster, one circle per merged pole.
fn cluster_residues(g: &MeijerGParams, members: &[usize], max_terms: usize) -> Result<(f64, f64, f64, u64)> {
    let phi = g.to_mellin();
    let top = *members
        .iter()
        .min_by(|&&x, &&y| g.lower[x].re.total_cmp(&g.lower[y].re))
        .expect("non-empty cluster");
    let b_top = g.lower[top];
    let mut total = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut err = 0.0;
    let mut largest: f64 = 0.0;
    let mut quiet = 0;
    let mut evaluations = 0u64;
    for l in 0..=max_terms {
        let center = -b_top - l as f64;
        // members whose poles have merged at this point
        let here: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&j| near_integer(center + g.lower[j]).is_some_and(|k| k <= 0))
            .collect();
        let spread = here
            .iter()
            .map(|&j| (center + g.lower[j] + (-(center + g.lower[j]).re).round()).norm())
            .fold(0.0, f64::max);
        let gap = nearest_other_pole(g, center, &here).min(1.0);
        let radius = 0.5 * gap;
        if radius <= 100.0 * spread {
            return Err(Error::CoincidentPole(b_top.re, spread));
        }
        let (res, abs) = circle_residue(&phi, center, radius)?;
        evaluations += CIRCLE_NODES as u64;
        total += res;
        abs_sum += res.norm();
        err += 1e-15 * abs * radius.recip().max(1.0) * radius;
        largest = largest.max(res.norm());
        if res.norm() <= 1e-18 * largest {
            quiet += 1;
            if quiet >= STOP_RUN {
                return Ok((total.re, abs_sum, err + total.im.abs(), evaluations));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Divergence(max_terms))
}

fn finish(value: f64, extra_err: f64, work: u64) -> Result<EvalResult> {
    if !value.is_finite() {
        return Err(Error::Divergence(work as usize));
    }
    let err = extra_err + 2.0 * f64::EPSILON * value.abs();
    Ok(EvalResult::new(value, err, MethodTag::ResidueSeries, work))
}

/// Residue series in the simple-pole regime.
///
/// Fails with [`Error::CoincidentPole`] when two lower parameters differ by an
/// integer; [`residue_series_eval_resolved`] handles that case.
pub fn residue_series_eval(g: &MeijerGParams, max_terms: usize) -> Result<EvalResult> {
    g.validate()?;
    g.check_series_shape()?;
    if let Some((x, y)) = g.coincident_pair() {
        return Err(Error::CoincidentPole(x.re, y.re));
    }
    let all: Vec<usize> = (0..g.m).collect();
    if g.is_real() {
        let s = dd_families(g, &all, max_terms)?;
        finish(s.value, 1e-28 * s.abs_sum, s.terms)
    } else {
        let (v, abs_sum, terms) = complex_families(g, &all, max_terms)?;
        finish(v.re, 1e-15 * abs_sum + v.im.abs(), terms)
    }
}

/// Residue series that also accepts lower parameters differing by integers.
///
/// Families without integer-offset partners are summed as in
/// [`residue_series_eval`]. Where poles merge into higher-order poles the
/// residue is taken numerically on a small circle around the merged pole.
pub fn residue_series_eval_resolved(g: &MeijerGParams, max_terms: usize) -> Result<EvalResult> {
    g.validate()?;
    g.check_series_shape()?;
    let clusters = g.clusters();
    let simple: Vec<usize> = clusters.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
    let mut value = 0.0;
    let mut err = 0.0;
    let mut work = 0u64;
    if !simple.is_empty() {
        if g.is_real() {
            let s = dd_families(g, &simple, max_terms)?;
            value += s.value;
            err += 1e-28 * s.abs_sum;
            work += s.terms;
        } else {
            let (v, a, t) = complex_families(g, &simple, max_terms)?;
            value += v.re;
            err += 1e-15 * a + v.im.abs();
            work += t;
        }
    }
    for c in clusters.iter().filter(|c| c.len() > 1) {
        let (v, a, e, w) = cluster_residues(g, c, max_terms)?;
        value += v;
        err += e + 4.0 * f64::EPSILON * a;
        work += w;
    }
    finish(value, err, work)
}

/// Contour integral of the G-function.
pub fn contour_eval_g(g: &MeijerGParams, rel_tol: f64) -> Result<EvalResult> {
    g.validate()?;
    contour_eval_auto(&g.to_mellin(), rel_tol)
}

/// G-function value: residue series when the poles are simple and the
/// cancellation leaves `rel_tol` accuracy, otherwise the contour.
pub fn meijer_g(g: &MeijerGParams, rel_tol: f64) -> Result<EvalResult> {
    g.validate()?;
    if g.check_series_shape().is_ok() && g.coincident_pair().is_none() {
        match residue_series_eval(g, 2000) {
            Ok(r) if r.relative_error_estimate() <= rel_tol => return Ok(r),
            Ok(_) | Err(Error::Divergence(_)) => {}
            Err(e) => return Err(e),
        }
    }
    contour_eval_g(g, rel_tol)
}
