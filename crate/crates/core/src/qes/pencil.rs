//! The finite secular pencil for the polynomial factor `Pₙ(y)`.
//!
//! Substituting `ψ = (y-1)^{p₁} (y+1)^{p₂} e^{-s y} Pₙ(y)` into
//! `(y²-1)ψ_yy + yψ_y - (s²(y²-1) + (V2/α²) y - E/α²)ψ = 0` and imposing
//! `V2 = -2√V1 α (b₁ + b₁' + n)` leaves a polynomial of degree `n` whose
//! coefficients are linear in `c₀..cₙ`. Matching them gives `H c = μ c`
//! with `E = -α² μ`.

use nalgebra::DMatrix;
use crate::error::{Error, Result};
use crate::potential::PotentialParams;
use crate::qhj::{qes_target_v2, ratio_to_f64, QesSet};

/// Relative tolerance on the QES condition accepted by [`build_pencil`].
pub const QES_CONDITION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPencil {
    pub size: usize,
    /// Dimensionless: eigenvalues `μ` give `E = -α² μ`.
    pub matrix: DMatrix<f64>,
    pub set: QesSet,
    pub s: f64,
}

/// Entries of row `k` at columns `k-1, k, k+1, k+2`.
pub fn pencil_row(set: &QesSet, s: f64, k: usize) -> [f64; 4] {
    let p1 = ratio_to_f64(&set.p1);
    let p2 = ratio_to_f64(&set.p2);
    let n = set.n as f64;
    let kf = k as f64;
    let sum = p1 + p2;
    let diag = kf * (kf - 1.0) + (2.0 * sum + 1.0) * kf + sum * sum - 2.0 * s * (p1 - p2);
    let super1 = 2.0 * (kf + 1.0) * (p1 - p2 + s);
    let super2 = -(kf + 2.0) * (kf + 1.0);
    let sub1 = 2.0 * s * (n - kf + 1.0);
    [sub1, diag, super1, super2]
}

pub fn build_pencil(set: &QesSet, params: &PotentialParams) -> Result<SpectralPencil> {
    let s = params.s()?;
    let required = qes_target_v2(set, params.v1(), params.alpha())?;
    if (params.v2() - required).abs() > QES_CONDITION_TOLERANCE * required.abs() {
        return Err(Error::InadmissibleParameters {
            v2: params.v2(),
            required,
        });
    }
    let size = set.n as usize + 1;
    let mut matrix = DMatrix::<f64>::zeros(size, size);
    for k in 0..size {
        let [sub1, diag, super1, super2] = pencil_row(set, s, k);
        if k >= 1 {
            matrix[(k, k - 1)] = sub1;
        }
        matrix[(k, k)] = diag;
        if k + 1 < size {
            matrix[(k, k + 1)] = super1;
        }
        if k + 2 < size {
            matrix[(k, k + 2)] = super2;
        }
    }
    Ok(SpectralPencil {
        size,
        matrix,
        set: *set,
        s,
    })
}

/// Parlett–Reinsch balancing with radix-2 scalings; returns `D⁻¹ A D`.
pub fn balance(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let mut m = a.clone();
    let radix = 2.0_f64;
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut cc = c;
            while cc < r / radix {
                cc *= radix;
                f *= radix;
            }
            while cc >= r * radix {
                cc /= radix;
                f /= radix;
            }
            if (cc + r / f) < 0.95 * s {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
        if converged {
            return m;
        }
    }
}
