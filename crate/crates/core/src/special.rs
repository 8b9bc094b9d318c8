//! Special functions needed by the Laguerre-basis model.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Generalized Laguerre polynomial `L_n^alpha(y)` by upward recurrence.
pub fn laguerre(n: usize, alpha: f64, y: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - y;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - y) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Unevaluated sum `hi + lo`, about 32 significant digits.
#[derive(Debug, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl From<f64> for DoubleDouble {
    fn from(hi: f64) -> Self {
        Self { hi, lo: 0.0 }
    }
}

impl DoubleDouble {
    /// Renormalizes `a + b` assuming `|a| >= |b|`.
    fn quick(a: f64, b: f64) -> Self {
        let hi = a + b;
        Self {
            hi,
            lo: b - (hi - a),
        }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let hi = a + b;
        let bb = hi - a;
        Self {
            hi,
            lo: (a - (hi - bb)) + (b - bb),
        }
    }

    fn add(self, o: Self) -> Self {
        let s = Self::two_sum(self.hi, o.hi);
        let t = Self::two_sum(self.lo, o.lo);
        let r = Self::quick(s.hi, s.lo + t.hi);
        Self::quick(r.hi, r.lo + t.lo)
    }

    fn mul(self, b: f64) -> Self {
        let p = self.hi * b;
        let err = self.hi.mul_add(b, -p);
        Self::quick(p, err + self.lo * b)
    }

    fn div(self, b: f64) -> Self {
        let q = self.hi / b;
        let p = q * b;
        let err = q.mul_add(b, -p);
        let rem = ((self.hi - p) - err) + self.lo;
        Self::quick(q, rem / b)
    }
}

/// Kummer's `1F1(a; b; y)` summed as a power series.
///
/// `b` must not be a non-positive integer. The loop runs until the terms are
/// negligible after the Pochhammer signs have settled. Terms and partial sums
/// are kept in double-double precision: for `a < 0` the largest terms can
/// exceed the result by many orders of magnitude.
pub fn hyp1f1(a: f64, b: f64, y: f64) -> Result<f64> {
    if b <= 0.0 && b.fract() == 0.0 {
        return Err(Error::Precondition(format!(
            "1F1 with non-positive integer b = {b}"
        )));
    }
    let settle = (-a).max(-b).max(0.0).ceil() as usize + 1;
    let mut term = DoubleDouble::from(1.0);
    let mut sum = DoubleDouble::from(1.0);
    for k in 0..20_000usize {
        let kf = k as f64;
        // (b + k)(k + 1) is exact for half-integer b
        term = term.mul(a + kf).mul(y).div((b + kf) * (kf + 1.0));
        sum = sum.add(term);
        if !sum.hi.is_finite() {
            return Err(Error::Range(format!("1F1({a}; {b}; {y}) overflows")));
        }
        if (k > settle && term.hi.abs() <= 1e-33 * sum.hi.abs()) || term.hi == 0.0 {
            return Ok(sum.hi + sum.lo);
        }
    }
    Err(Error::Range(format!(
        "1F1({a}; {b}; {y}) series did not converge"
    )))
}

/// `Gamma(m + 1/2)` for `m >= 0`, exact up to rounding.
pub fn gamma_half(m: u32) -> f64 {
    (0..m).fold(PI.sqrt(), |acc, j| acc * (j as f64 + 0.5))
}

/// `n! / Gamma(n + alpha + 1)` as a running product.
pub fn factorial_over_gamma(n: usize, alpha: f64, gamma_alpha_plus_one: f64) -> f64 {
    (1..=n).fold(1.0 / gamma_alpha_plus_one, |acc, k| {
        acc * k as f64 / (k as f64 + alpha)
    })
}
