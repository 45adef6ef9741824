use std::fmt;

use nalgebra::DMatrix;
use crate::error::{Error, Result};
use crate::poly;
use crate::potential::PotentialParams;
use crate::qes::pencil::{balance, SpectralPencil};
use crate::qhj::{ratio_to_f64, QesSet};

/// Imaginary parts of pencil eigenvalues above this (relative) are an
/// invariant violation.
pub const REALITY_TOLERANCE: f64 = 1e-10;

/// A polynomial root closer than this to `y = 1` collides with the fixed pole.
pub const FIXED_POLE_COLLISION: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    pub fn of_set(set: &QesSet) -> Self {
        if set.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// One closed-form level: energy plus the monic polynomial factor.
#[derive(Debug, Clone, PartialEq)]
pub struct QesLevel {
    pub energy: f64,
    /// `c₀..cₙ`, with `cₙ = 1`.
    pub coefficients: Vec<f64>,
    pub set: QesSet,
    pub node_count: u32,
    pub parity: Parity,
}

impl QesLevel {
    /// Real roots of `Pₙ` in `y > 1`, ascending.
    pub fn physical_roots(&self) -> Vec<f64> {
        let scale = poly::cauchy_bound(&self.coefficients).max(1.0);
        let mut r: Vec<f64> = poly::roots(&self.coefficients)
            .into_iter()
            .filter(|z| z.im.abs() <= 1e-8 * scale && z.re > 1.0)
            .map(|z| z.re)
            .collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        r
    }
}

fn node_count(set: &QesSet, coefficients: &[f64]) -> Result<u32> {
    let scale = poly::cauchy_bound(coefficients).max(1.0);
    let mut moving = 0;
    for z in poly::roots(coefficients) {
        if z.im.abs() > 1e-8 * scale {
            continue;
        }
        if (z.re - 1.0).abs() <= FIXED_POLE_COLLISION * scale {
            return Err(Error::InvariantViolation(format!(
                "polynomial root at y = {} collides with the fixed pole y = 1",
                z.re
            )));
        }
        if z.re > 1.0 {
            moving += 1;
        }
    }
    Ok(2 * moving + u32::from(set.is_odd()))
}

/// Null vector of `H - μ I`, scaled so the last entry is 1.
fn monic_eigenvector(matrix: &DMatrix<f64>, mu: f64) -> Result<Vec<f64>> {
    let n = matrix.nrows();
    let shifted = matrix - DMatrix::<f64>::identity(n, n) * mu;
    let svd = shifted.svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::Numeric("SVD did not return right singular vectors".into()))?;
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .ok_or_else(|| Error::Numeric("empty pencil".into()))?;
    let v: Vec<f64> = v_t.row(idx).iter().copied().collect();
    let lead = v[n - 1];
    if lead.abs() < 1e-300 {
        return Err(Error::Numeric(
            "eigenvector has vanishing leading coefficient".into(),
        ));
    }
    Ok(v.iter().map(|c| c / lead).collect())
}

/// Solve the pencil: energies ascending, each with its monic polynomial.
pub fn solve_levels(pencil: &SpectralPencil, params: &PotentialParams) -> Result<Vec<QesLevel>> {
    let set = pencil.set;
    let alpha2 = params.alpha() * params.alpha();
    let parity = Parity::of_set(&set);

    let mus: Vec<f64> = if pencil.size == 1 {
        let p1 = ratio_to_f64(&set.p1);
        let p2 = ratio_to_f64(&set.p2);
        vec![(p1 + p2).powi(2) - 2.0 * pencil.s * (p1 - p2)]
    } else {
        let eig = balance(&pencil.matrix).complex_eigenvalues();
        let mut mus = Vec::with_capacity(pencil.size);
        for z in eig.iter() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::Numeric("eigensolver produced non-finite values".into()));
            }
            if z.im.abs() > REALITY_TOLERANCE * z.norm().max(1.0) {
                return Err(Error::InvariantViolation(format!(
                    "complex pencil eigenvalue {z} for {set}"
                )));
            }
            mus.push(z.re);
        }
        mus
    };

    let mut levels = mus
        .into_iter()
        .map(|mu| {
            let coefficients = if pencil.size == 1 {
                vec![1.0]
            } else {
                monic_eigenvector(&pencil.matrix, mu)?
            };
            Ok(QesLevel {
                energy: -alpha2 * mu,
                node_count: node_count(&set, &coefficients)?,
                coefficients,
                set,
                parity,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    levels.sort_by(|a, b| a.energy.partial_cmp(&b.energy).unwrap());
    Ok(levels)
}
