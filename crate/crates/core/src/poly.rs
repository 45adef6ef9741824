//! Small helpers for real polynomials stored in ascending order.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// `(p(y), p'(y), p''(y))` by Horner.
pub fn eval_with_derivatives(coeffs: &[f64], y: f64) -> (f64, f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    let mut ddp = 0.0;
    for &c in coeffs.iter().rev() {
        ddp = ddp * y + 2.0 * dp;
        dp = dp * y + p;
        p = p * y + c;
    }
    (p, dp, ddp)
}

/// `(p(z), p'(z))` at a complex point.
pub fn eval_complex(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `Σ |c_k| |y|^k`, the scale against which `p(y) ≈ 0` is judged.
pub fn magnitude_scale(coeffs: &[f64], y: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * y.abs() + c.abs())
}

/// All roots, from the eigenvalues of the companion matrix.
pub fn roots(coeffs: &[f64]) -> Vec<Complex64> {
    let degree = match coeffs.iter().rposition(|c| *c != 0.0) {
        Some(d) if d > 0 => d,
        _ => return Vec::new(),
    };
    let lead = coeffs[degree];
    let mut companion = DMatrix::<f64>::zeros(degree, degree);
    for i in 1..degree {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..degree {
        companion[(i, degree - 1)] = -coeffs[i] / lead;
    }
    companion.complex_eigenvalues().iter().copied().collect()
}

/// Cauchy bound: every root satisfies `|z| ≤ 1 + max |c_k / c_n|`.
pub fn cauchy_bound(coeffs: &[f64]) -> f64 {
    let degree = coeffs.iter().rposition(|c| *c != 0.0).unwrap_or(0);
    if degree == 0 {
        return 0.0;
    }
    let lead = coeffs[degree].abs();
    1.0 + coeffs[..degree].iter().map(|c| c.abs() / lead).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horner_derivatives() {
        // 2 - 3y + y³
        let c = [2.0, -3.0, 0.0, 1.0];
        let (p, dp, ddp) = eval_with_derivatives(&c, 1.5);
        assert!((p - (2.0 - 4.5 + 3.375)).abs() < 1e-14);
        assert!((dp - (-3.0 + 3.0 * 2.25)).abs() < 1e-14);
        assert!((ddp - 9.0).abs() < 1e-14);
    }

    #[test]
    fn companion_roots() {
        // (y-1)(y-2)(y+3) = y³ - 7y + 6
        let mut r: Vec<f64> = roots(&[6.0, -7.0, 0.0, 1.0]).iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(roots(&[5.0]).is_empty());
        assert!(cauchy_bound(&[6.0, -7.0, 0.0, 1.0]) >= 3.0);
    }
}
