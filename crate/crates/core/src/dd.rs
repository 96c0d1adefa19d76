//! Double-double ("compensated pair") arithmetic.
//!
//! Residue series for the decaying G-function shapes cancel to many orders
//! of magnitude once `z` exceeds a few units. Summing them with a
//! ~106-bit mantissa keeps the result accurate to double precision for the
//! argument ranges used here. Only what the series needs is provided:
//! field operations, `exp`, `ln`, `sin(πx)` and a real log-gamma.

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

pub const PI: DoubleDouble = DoubleDouble::new(std::f64::consts::PI, 1.2246467991473532e-16);
pub const LN2: DoubleDouble = DoubleDouble::new(std::f64::consts::LN_2, 2.3190468138462996e-17);
pub const HALF_LN_2PI: DoubleDouble = DoubleDouble::new(0.9189385332046728, -3.8782941580672414e-17);

/// B_{2k} / (2k (2k-1)) as exact numerator/denominator pairs, k = 1..=15.
const STIRLING: [(f64, f64); 15] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (1.0, 1188.0),
    (-691.0, 360360.0),
    (1.0, 156.0),
    (-3617.0, 122400.0),
    (43867.0, 244188.0),
    (-174611.0, 125400.0),
    (77683.0, 5796.0),
    (-236364091.0, 1506960.0),
    (657931.0, 300.0),
    (-3392780147.0, 93960.0),
    (1723168255201.0, 2492028.0),
];

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble::new(0.0, 0.0);
    pub const ONE: DoubleDouble = DoubleDouble::new(1.0, 0.0);

    pub const fn new(hi: f64, lo: f64) -> Self {
        DoubleDouble { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        DoubleDouble::new(x, 0.0)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    fn mul_pow2(self, k: i32) -> Self {
        // split the scaling so 2^k never overflows on its own
        let half = k / 2;
        let s1 = 2f64.powi(half);
        let s2 = 2f64.powi(k - half);
        DoubleDouble::new(self.hi * s1 * s2, self.lo * s1 * s2)
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.78 {
            return DoubleDouble::new(f64::INFINITY, 0.0);
        }
        if self.hi < -745.0 {
            return DoubleDouble::ZERO;
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2 * k).mul_pow2(-10);
        // e^r - 1 by Taylor, then (1 + s)^2 - 1 = s (s + 2) ten times
        let mut term = r;
        let mut s = r;
        for n in 2..=12 {
            term = term * r / (n as f64);
            s += term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            s = s * (s + 2.0);
        }
        (s + 1.0).mul_pow2(k as i32)
    }

    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return DoubleDouble::new(f64::NAN, 0.0);
        }
        if self.hi.is_infinite() {
            return DoubleDouble::new(f64::INFINITY, 0.0);
        }
        let mut y = DoubleDouble::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - 1.0;
        }
        y
    }

    pub fn powf(self, e: DoubleDouble) -> Self {
        (e * self.ln()).exp()
    }

    pub fn powi(self, n: u32) -> Self {
        let mut base = self;
        let mut acc = DoubleDouble::ONE;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc *= base;
            }
            base *= base;
            n >>= 1;
        }
        acc
    }

    /// `sin(π x)`.
    pub fn sin_pi(self) -> Self {
        let n = self.hi.round();
        let r = self - n;
        let theta = r * PI;
        let t2 = theta * theta;
        let mut term = theta;
        let mut acc = theta;
        let mut k = 1.0;
        loop {
            term = -(term * t2) / ((2.0 * k) * (2.0 * k + 1.0));
            acc += term;
            if term.hi.abs() < 1e-35 || k > 30.0 {
                break;
            }
            k += 1.0;
        }
        if (n as i64).rem_euclid(2) == 1 {
            -acc
        } else {
            acc
        }
    }

    /// `(ln|Γ(x)|, sign Γ(x))`; `None` at the poles 0, -1, -2, ...
    pub fn ln_gamma(self) -> Option<(DoubleDouble, f64)> {
        if self.hi < 0.5 {
            let n = self.hi.round();
            if n <= 0.0 && (self - n).hi == 0.0 {
                return None;
            }
            let s = self.sin_pi();
            let (lg, sign) = (DoubleDouble::ONE - self).ln_gamma()?;
            let ln_abs = PI.ln() - s.abs().ln() - lg;
            return Some((ln_abs, sign * s.hi.signum()));
        }
        let mut y = self;
        let mut prod = DoubleDouble::ONE;
        while y.hi < 40.0 {
            prod *= y;
            y += 1.0;
        }
        let inv = DoubleDouble::ONE / y;
        let inv2 = inv * inv;
        let mut power = inv;
        let mut series = DoubleDouble::ZERO;
        for (num, den) in STIRLING {
            series += power * DoubleDouble::from_f64(num) / den;
            power *= inv2;
        }
        let ln_y = y.ln();
        let lg = (y - 0.5) * ln_y - y + HALF_LN_2PI + series - prod.ln();
        Some((lg, 1.0))
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble::from_f64(x)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble::new(-self.hi, -self.lo)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, y: Self) -> Self {
        let (s, e) = two_sum(self.hi, y.hi);
        let (t, f) = two_sum(self.lo, y.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble::new(hi, lo)
    }
}

impl Add<f64> for DoubleDouble {
    type Output = Self;
    fn add(self, y: f64) -> Self {
        let (s, e) = two_sum(self.hi, y);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        DoubleDouble::new(hi, lo)
    }
}

impl AddAssign for DoubleDouble {
    fn add_assign(&mut self, y: Self) {
        *self = *self + y;
    }
}

impl AddAssign<f64> for DoubleDouble {
    fn add_assign(&mut self, y: f64) {
        *self = *self + y;
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, y: Self) -> Self {
        self + (-y)
    }
}

impl Sub<f64> for DoubleDouble {
    type Output = Self;
    fn sub(self, y: f64) -> Self {
        self + (-y)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, y: Self) -> Self {
        let (p, e) = two_prod(self.hi, y.hi);
        let e = e + (self.hi * y.lo + self.lo * y.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble::new(hi, lo)
    }
}

impl Mul<f64> for DoubleDouble {
    type Output = Self;
    fn mul(self, y: f64) -> Self {
        let (p, e) = two_prod(self.hi, y);
        let (hi, lo) = quick_two_sum(p, e + self.lo * y);
        DoubleDouble::new(hi, lo)
    }
}

impl MulAssign for DoubleDouble {
    fn mul_assign(&mut self, y: Self) {
        *self = *self * y;
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, y: Self) -> Self {
        let q1 = self.hi / y.hi;
        let r = self - y * q1;
        let q2 = r.hi / y.hi;
        let r = r - y * q2;
        let q3 = r.hi / y.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble::new(hi, lo) + q3
    }
}

impl Div<f64> for DoubleDouble {
    type Output = Self;
    fn div(self, y: f64) -> Self {
        self / DoubleDouble::from_f64(y)
    }
}
