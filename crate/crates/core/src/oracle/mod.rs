//! Independent numerical check of the closed-form levels: second-order
//! central differences for `-ψ'' + Vψ = Eψ` on a box with Dirichlet walls,
//! solved as a symmetric tridiagonal eigenproblem.

mod grid;
mod tridiag;
mod verify;

pub use grid::{default_grid, GridSpec, MAX_POINTS, MIN_POINTS, TAIL_EXPONENT};
pub use tridiag::{eigenvector, sturm_count};
pub use verify::{
    adjudicate, verify_qes, Candidate, UnmatchedLevel, VerificationReport, VerificationRow,
    CONVERGENCE_RATIO_RANGE,
};

use crate::error::{Error, Result};
use crate::potential::PotentialParams;

/// Entries below this fraction of the largest are ignored when counting nodes.
pub const NODE_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct NumericSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
    pub grid: GridSpec,
}

/// Diagonal and constant off-diagonal of the discretized operator.
pub fn discretize(params: &PotentialParams, grid: &GridSpec) -> (Vec<f64>, f64) {
    let h = grid.step();
    let kinetic = 1.0 / (h * h);
    let diag = (0..grid.points)
        .map(|i| 2.0 * kinetic + params.real_value(grid.x(i)))
        .collect();
    (diag, -kinetic)
}

/// Eigenvalues only; cheaper than [`lowest_eigenvalues`].
pub fn lowest_energies(params: &PotentialParams, grid: &GridSpec, k: usize) -> Result<Vec<f64>> {
    check_k(grid, k)?;
    let (diag, off) = discretize(params, grid);
    Ok(tridiag::lowest_eigenvalues(&diag, off, k))
}

fn check_k(grid: &GridSpec, k: usize) -> Result<()> {
    if k == 0 || k > grid.points / 10 {
        return Err(Error::InvalidParameters(format!(
            "k = {k} must be in 1..={}",
            grid.points / 10
        )));
    }
    Ok(())
}

/// The `k` lowest eigenpairs; checks strict ordering and that the `j`-th
/// vector has `j` sign changes.
pub fn lowest_eigenvalues(params: &PotentialParams, grid: &GridSpec, k: usize) -> Result<NumericSpectrum> {
    check_k(grid, k)?;
    let (diag, off) = discretize(params, grid);
    let eigenvalues = tridiag::lowest_eigenvalues(&diag, off, k);
    if eigenvalues.iter().any(|e| !e.is_finite()) {
        return Err(Error::Numeric("bisection produced a non-finite eigenvalue".into()));
    }
    if eigenvalues.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvariantViolation("eigenvalues are not strictly increasing".into()));
    }
    let eigenvectors = eigenvalues
        .iter()
        .map(|&e| tridiag::eigenvector(&diag, off, e))
        .collect::<Result<Vec<_>>>()?;
    for (j, v) in eigenvectors.iter().enumerate() {
        let nodes = node_count(v)?;
        if nodes != j {
            return Err(Error::InvariantViolation(format!(
                "eigenvector {j} has {nodes} sign changes"
            )));
        }
    }
    Ok(NumericSpectrum {
        eigenvalues,
        eigenvectors,
        grid: *grid,
    })
}

/// Strict sign changes, skipping entries below `1e-12 · max|v|`.
pub fn node_count(vector: &[f64]) -> Result<usize> {
    let max = vector.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if max.is_nan() || max <= 0.0 {
        return Err(Error::DegenerateVector);
    }
    let cut = NODE_THRESHOLD * max;
    let mut last = 0.0;
    let mut changes = 0;
    for &v in vector.iter().filter(|v| v.abs() >= cut) {
        if last != 0.0 && v.signum() != last {
            changes += 1;
        }
        last = v.signum();
    }
    Ok(changes)
}
