//! Truncated Laurent series, used to expand the Riccati fixed term at its
//! double poles and at infinity, and to match coefficients of trial
//! solutions order by order.
//!
//! A series `Σ c_k t^k` is stored from its valuation up to (but excluding) a
//! truncation order; everything at or beyond that order is unknown.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// Field scalars the series machinery can work over.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Scalar for Ratio<i64> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }
}

impl Scalar for Complex64 {
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Laurent<T> {
    valuation: i32,
    coeffs: Vec<T>,
}

impl<T: Scalar> Laurent<T> {
    /// Series with the given coefficients starting at `t^valuation`.
    pub fn new(valuation: i32, coeffs: Vec<T>) -> Self {
        Self { valuation, coeffs }
    }

    /// A polynomial in `t` (ascending coefficients), known up to `order`.
    pub fn from_polynomial(coeffs: &[T], order: i32) -> Self {
        let len = order.max(0) as usize;
        let c = (0..len)
            .map(|k| coeffs.get(k).cloned().unwrap_or_else(T::zero))
            .collect();
        Self::new(0, c)
    }

    pub fn constant(value: T, order: i32) -> Self {
        Self::from_polynomial(&[value], order)
    }

    pub fn valuation(&self) -> i32 {
        self.valuation
    }

    /// First power whose coefficient is unknown.
    pub fn order(&self) -> i32 {
        self.valuation + self.coeffs.len() as i32
    }

    /// Coefficient of `t^power`; `None` beyond the truncation order.
    pub fn coeff(&self, power: i32) -> Option<T> {
        if power >= self.order() {
            None
        } else if power < self.valuation {
            Some(T::zero())
        } else {
            Some(self.coeffs[(power - self.valuation) as usize].clone())
        }
    }

    /// Drop leading zeros so the valuation is the true one.
    pub fn normalized(mut self) -> Self {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.valuation += lead as i32;
        self
    }

    /// Multiply by `t^k`.
    pub fn shift(mut self, k: i32) -> Self {
        self.valuation += k;
        self
    }

    pub fn truncate(mut self, order: i32) -> Self {
        let keep = (order - self.valuation).max(0) as usize;
        self.coeffs.truncate(keep);
        self
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self::new(
            self.valuation,
            self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let lo = self.valuation.min(other.valuation);
        let hi = self.order().min(other.order());
        let coeffs = (lo..hi)
            .map(|p| self.coeff(p).unwrap() + other.coeff(p).unwrap())
            .collect();
        Self::new(lo, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = self.clone().normalized();
        let b = other.clone().normalized();
        let len = a.coeffs.len().min(b.coeffs.len());
        let mut coeffs = vec![T::zero(); len];
        for (i, ci) in a.coeffs.iter().enumerate().take(len) {
            for (j, cj) in b.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = coeffs[i + j].clone() + ci.clone() * cj.clone();
            }
        }
        Self::new(a.valuation + b.valuation, coeffs)
    }

    /// Multiplicative inverse; `None` if the series is identically zero to
    /// its known order.
    pub fn inverse(&self) -> Option<Self> {
        let a = self.clone().normalized();
        let lead = a.coeffs.first()?.clone();
        let n = a.coeffs.len();
        let mut inv = vec![T::zero(); n];
        inv[0] = T::one() / lead.clone();
        for k in 1..n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + a.coeffs[j].clone() * inv[k - j].clone();
            }
            inv[k] = -acc / lead.clone();
        }
        Some(Self::new(-a.valuation, inv))
    }

    /// `d/dt`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.clone() * T::from_i64((self.valuation + k as i32) as i64))
            .collect();
        Self::new(self.valuation - 1, coeffs)
    }

    /// For a series in `u = 1/y`, returns `d/dy = -u² d/du`.
    pub fn derivative_in_reciprocal(&self) -> Self {
        self.derivative().shift(2).scale(&-T::one())
    }
}

/// Taylor shift: coefficients of `p(y0 + t)` in ascending powers of `t`.
pub fn shift_polynomial<T: Scalar>(coeffs: &[T], y0: &T) -> Vec<T> {
    let mut out = coeffs.to_vec();
    let n = out.len();
    // repeated synthetic division by (y - y0)
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            out[j] = out[j].clone() + y0.clone() * out[j + 1].clone();
        }
    }
    out
}

/// Laurent expansion of `numerator(y) / denominator(y)` about `y = y0`, in
/// powers of `t = y - y0`, known up to `order`.
pub fn rational_about<T: Scalar>(numerator: &[T], denominator: &[T], y0: &T, order: i32) -> Option<Laurent<T>> {
    let num = shift_polynomial(numerator, y0);
    let den = shift_polynomial(denominator, y0);
    let m = den.iter().take_while(|c| c.is_zero()).count() as i32;
    let den_len = order + 2 * m + num.len() as i32 + 1;
    let den = Laurent::from_polynomial(&den, den_len).normalized();
    let inv = den.inverse()?;
    let num = Laurent::from_polynomial(&num, den_len);
    Some(num.mul(&inv).truncate(order))
}

/// Laurent expansion of `numerator(y) / denominator(y)` about `y = ∞`, in
/// powers of `u = 1/y`, known up to `order`.
pub fn rational_at_infinity<T: Scalar>(numerator: &[T], denominator: &[T], order: i32) -> Option<Laurent<T>> {
    // p(y) of degree d equals u^{-d} times the reversed polynomial in u
    let reversed = |p: &[T]| -> (i32, Vec<T>) {
        let d = p.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        (d as i32, p[..=d].iter().rev().cloned().collect())
    };
    let (dn, rn) = reversed(numerator);
    let (dd, rd) = reversed(denominator);
    let work = order + dn.abs() + dd.abs() + 2;
    let num = Laurent::from_polynomial(&rn, work).shift(-dn);
    let den = Laurent::from_polynomial(&rd, work).shift(-dd);
    Some(num.mul(&den.inverse()?).truncate(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Ratio<i64>;

    fn q(n: i64, d: i64) -> Q {
        Ratio::new(n, d)
    }

    #[test]
    fn taylor_shift() {
        // y² + 2 about y = 1: 3 + 2t + t²
        let s = shift_polynomial(&[q(2, 1), q(0, 1), q(1, 1)], &q(1, 1));
        assert_eq!(s, vec![q(3, 1), q(2, 1), q(1, 1)]);
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_t = Laurent::from_polynomial(&[1.0, -1.0], 6);
        let inv = one_minus_t.inverse().unwrap();
        for k in 0..6 {
            assert_eq!(inv.coeff(k), Some(1.0));
        }
        assert_eq!(inv.coeff(6), None);
    }

    #[test]
    fn double_pole_of_structural_term() {
        // (y²+2) / (4 (y²-1)²) at y = ±1 has leading coefficient 3/16
        let num = [q(2, 1), q(0, 1), q(1, 1)];
        let den = [q(4, 1), q(0, 1), q(-8, 1), q(0, 1), q(4, 1)];
        for y0 in [q(1, 1), q(-1, 1)] {
            let s = rational_about(&num, &den, &y0, 2).unwrap();
            assert_eq!(s.valuation(), -2);
            assert_eq!(s.coeff(-2), Some(q(3, 16)));
        }
    }

    #[test]
    fn expansion_at_infinity() {
        // y / (y² - 1) = u + u³ + ...
        let s = rational_at_infinity(&[0.0, 1.0], &[-1.0, 0.0, 1.0], 5).unwrap();
        assert_eq!(s.coeff(0), Some(0.0));
        assert_eq!(s.coeff(1), Some(1.0));
        assert_eq!(s.coeff(2), Some(0.0));
        assert_eq!(s.coeff(3), Some(1.0));
    }

    #[test]
    fn derivative_in_reciprocal_variable() {
        // χ = a + λ/y  ⇒  dχ/dy = -λ/y² = -λ u²
        let chi = Laurent::new(0, vec![2.0, 3.0, 0.0, 0.0]);
        let d = chi.derivative_in_reciprocal();
        assert_eq!(d.coeff(2), Some(-3.0));
        assert_eq!(d.coeff(1), Some(0.0));
    }

    #[test]
    fn product_of_laurent_series() {
        let a = Laurent::new(-1, vec![1.0, 1.0, 0.0]);
        let b = a.mul(&a);
        assert_eq!(b.valuation(), -2);
        assert_eq!(b.coeff(-2), Some(1.0));
        assert_eq!(b.coeff(-1), Some(2.0));
        assert_eq!(b.coeff(0), Some(1.0));
    }
}
