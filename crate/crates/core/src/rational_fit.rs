//! Schlessinger point-method continued fractions.
//!
//! For knots `(x_1, y_1) ... (x_M, y_M)` the interpolant is
//!
//! ```text
//! R(x) = y_1 / (1 + a_1 (x - x_1) / (1 + a_2 (x - x_2) / (1 + ... a_{M-1} (x - x_{M-1}))))
//! ```
//!
//! with one coefficient per knot after the first. The derivative is carried
//! through the same bottom-up recurrence as the value.

use crate::error::{Error, Result};

/// Smallest magnitude accepted as a divisor while solving for coefficients.
const FIT_TINY: f64 = 1e-300;
/// Denominators below this fraction of the numerator are treated as poles.
const POLE_RATIO: f64 = 1e-12;
const RESCALE_ABOVE: f64 = 1e150;
/// Minimum knot spacing.
const MIN_SPACING: f64 = 1e-12;
/// Mild extrapolation allowance beyond the outer knots.
pub const EXTRAPOLATION: f64 = 0.5;

/// Monotone interpolation knots `(x, energy)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotSet {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl KnotSet {
    pub fn new(points: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let (xs, ys): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
        if xs.len() < 2 {
            return Err(Error::Precondition(
                "a knot set needs at least 2 points".into(),
            ));
        }
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(Error::Precondition("knots must be finite".into()));
        }
        for k in 1..xs.len() {
            if xs[k] - xs[k - 1] < MIN_SPACING {
                return Err(Error::Interleave(format!(
                    "abscissas {} and {k} not strictly increasing",
                    k - 1
                )));
            }
            if ys[k] <= ys[k - 1] {
                return Err(Error::Interleave(format!(
                    "ordinates {} and {k} not strictly increasing",
                    k - 1
                )));
            }
        }
        Ok(Self { xs, ys })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalFit {
    xs: Vec<f64>,
    ys: Vec<f64>,
    coeffs: Vec<f64>,
}

impl RationalFit {
    /// Solves for the continued-fraction coefficients, inserting knots in
    /// increasing `x`.
    pub fn fit(knots: &KnotSet) -> Result<Self> {
        let xs = knots.xs.clone();
        let ys = knots.ys.clone();
        if ys[0].abs() < FIT_TINY {
            return Err(Error::FitDegenerate { node: 0 });
        }
        let mut coeffs: Vec<f64> = Vec::with_capacity(xs.len() - 1);
        for k in 1..xs.len() {
            // Peel the known levels off y_1 / y_k - 1 until only a_k remains.
            if ys[k].abs() < FIT_TINY {
                return Err(Error::FitDegenerate { node: k });
            }
            let mut t = ys[0] / ys[k] - 1.0;
            for (i, &a) in coeffs.iter().enumerate() {
                if t.abs() < FIT_TINY {
                    return Err(Error::FitDegenerate { node: k });
                }
                t = a * (xs[k] - xs[i]) / t - 1.0;
            }
            let a = t / (xs[k] - xs[k - 1]);
            if !a.is_finite() {
                return Err(Error::FitDegenerate { node: k });
            }
            coeffs.push(a);
        }
        Ok(Self { xs, ys, coeffs })
    }

    /// Knots in insertion order.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Interval on which evaluation is allowed.
    pub fn domain(&self) -> (f64, f64) {
        (
            self.xs[0] - EXTRAPOLATION,
            self.xs[self.xs.len() - 1] + EXTRAPOLATION,
        )
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.eval_deriv(x).map(|(v, _)| v)
    }

    /// Value and slope at `x`.
    ///
    /// Uses the forward (Wallis) recurrence for the convergents `A_k / B_k`
    /// together with their derivatives, so no intermediate quotient can blow
    /// up where an inner level of the fraction vanishes.
    pub fn eval_deriv(&self, x: f64) -> Result<(f64, f64)> {
        let (lo, hi) = self.domain();
        if !(lo..=hi).contains(&x) {
            return Err(Error::OutOfRange { x, lo, hi });
        }
        // (A_{k-2}, A_{k-1}) and (B_{k-2}, B_{k-1}) with derivatives
        let (mut a2, mut a1) = (0.0, self.ys[0]);
        let (mut b2, mut b1) = (1.0, 1.0);
        let (mut da2, mut da1) = (0.0, 0.0);
        let (mut db2, mut db1) = (0.0, 0.0);
        for (i, &c) in self.coeffs.iter().enumerate() {
            let part = c * (x - self.xs[i]);
            let a = a1 + part * a2;
            let b = b1 + part * b2;
            let da = da1 + c * a2 + part * da2;
            let db = db1 + c * b2 + part * db2;
            (a2, a1, b2, b1) = (a1, a, b1, b);
            (da2, da1, db2, db1) = (da1, da, db1, db);
            let big = a1.abs().max(b1.abs());
            if big > RESCALE_ABOVE {
                let s = 1.0 / big;
                a2 *= s;
                a1 *= s;
                b2 *= s;
                b1 *= s;
                da2 *= s;
                da1 *= s;
                db2 *= s;
                db1 *= s;
            }
        }
        if !(a1.is_finite() && b1.is_finite()) || b1.abs() < POLE_RATIO * a1.abs() {
            return Err(Error::Pole { x });
        }
        let value = a1 / b1;
        let slope = (da1 * b1 - a1 * db1) / (b1 * b1);
        if !value.is_finite() || !slope.is_finite() {
            return Err(Error::Pole { x });
        }
        Ok((value, slope))
    }
}
