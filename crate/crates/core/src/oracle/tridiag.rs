//! Symmetric tridiagonal eigenpairs: Sturm-sequence bisection for the
//! eigenvalues, inverse iteration for the vectors.

use crate::error::{Error, Result};

/// Number of eigenvalues strictly below `x`, from the signs of the `LDLᵀ`
/// pivots of `T - x I`.
pub fn sturm_count(diag: &[f64], off: f64, x: f64) -> usize {
    let off2 = off * off;
    let guard = f64::MIN_POSITIVE.sqrt();
    let mut count = 0;
    let mut q = diag[0] - x;
    for (i, d) in diag.iter().enumerate() {
        if i > 0 {
            let q_safe = if q.abs() < guard { guard.copysign(q) } else { q };
            q = (d - x) - off2 / q_safe;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Gershgorin interval containing the spectrum.
fn gershgorin(diag: &[f64], off: f64) -> (f64, f64) {
    let r = 2.0 * off.abs();
    let lo = diag.iter().fold(f64::INFINITY, |a, d| a.min(d - r));
    let hi = diag.iter().fold(f64::NEG_INFINITY, |a, d| a.max(d + r));
    (lo, hi)
}

/// The `k` smallest eigenvalues, ascending, each to near machine precision.
pub fn lowest_eigenvalues(diag: &[f64], off: f64, k: usize) -> Vec<f64> {
    let (lo0, hi0) = gershgorin(diag, off);
    let mut out = Vec::with_capacity(k);
    let mut lo_bound = lo0;
    for index in 0..k {
        let mut lo = lo_bound;
        let mut hi = hi0;
        // smallest x with sturm_count(x) > index
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count(diag, off, mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let value = 0.5 * (lo + hi);
        out.push(value);
        lo_bound = lo;
    }
    out
}

/// Solve `(T - shift I) x = b` by Gaussian elimination with partial pivoting
/// on the band.
fn solve_shifted(diag: &[f64], off: f64, shift: f64, b: &[f64]) -> Vec<f64> {
    let n = diag.len();
    // rows hold three band entries after pivoting: main, first and second super
    let mut d: Vec<f64> = diag.iter().map(|v| v - shift).collect();
    let mut du = vec![off; n.saturating_sub(1)];
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    let mut dl = vec![off; n.saturating_sub(1)];
    let mut rhs = b.to_vec();
    let tiny = f64::EPSILON * diag.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(off.abs());

    for i in 0..n.saturating_sub(1) {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let m = dl[i] / d[i];
            d[i + 1] -= m * du[i];
            rhs[i + 1] -= m * rhs[i];
            dl[i] = 0.0;
        } else {
            // swap rows i and i+1
            let m = d[i] / dl[i];
            d[i] = dl[i];
            let tmp = d[i + 1];
            d[i + 1] = du[i] - m * tmp;
            if i + 1 < n - 1 {
                du2[i] = du[i + 1];
                du[i + 1] = -m * du2[i];
            }
            du[i] = tmp;
            rhs.swap(i, i + 1);
            rhs[i + 1] -= m * rhs[i];
            dl[i] = 0.0;
        }
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        if i + 1 < n {
            acc -= du[i] * x[i + 1];
        }
        if i + 2 < n {
            acc -= du2[i] * x[i + 2];
        }
        x[i] = acc / d[i];
    }
    x
}

/// Eigenvector for a known eigenvalue, max-normalized with its largest
/// entry positive.
pub fn eigenvector(diag: &[f64], off: f64, eigenvalue: f64) -> Result<Vec<f64>> {
    let n = diag.len();
    let scale = eigenvalue.abs().max(off.abs());
    let shift = eigenvalue + 1e3 * f64::EPSILON * scale;
    // deterministic, non-symmetric start so both parities are represented
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * ((i as f64) * 0.618_033_988_75).sin()).collect();
    for _ in 0..3 {
        v = solve_shifted(diag, off, shift, &v);
        let m = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::Numeric("inverse iteration diverged".into()));
        }
        v.iter_mut().for_each(|x| *x /= m);
    }
    let (imax, _) = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
        .unwrap();
    if v[imax] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(v)
}
