//! Closed-form QES levels: the secular pencil, its eigenpairs, the
//! eigenfunctions they define, and node bookkeeping.

mod levels;
mod pencil;
mod poles;
mod tables;
mod wavefunction;

pub use levels::{solve_levels, Parity, QesLevel, FIXED_POLE_COLLISION, REALITY_TOLERANCE};
pub use pencil::{balance, build_pencil, pencil_row, SpectralPencil, QES_CONDITION_TOLERANCE};
pub use poles::{
    count_moving_poles, physical_rectangle, winding_number, MovingPoleCount, Rectangle,
    CONTOUR_CLEARANCE, WINDING_TOLERANCE,
};
pub use tables::{
    printed_energy, reproduce_reference_tables, Adjudication, ConditionRow, ReferenceTables, Quantity,
    TableEntry,
};
pub use wavefunction::{
    evaluate_wavefunction, qhj_residual, quantum_momentum, sampling_half_width,
    schrodinger_residual, wavefunction, ClosedFormWavefunction,
};

use crate::error::Result;
use crate::potential::PotentialParams;
use crate::qhj::QesClassification;

/// Solve every set of a classification at `params`; levels sorted by energy.
pub fn solve_classification(params: &PotentialParams, classification: &QesClassification) -> Result<Vec<QesLevel>> {
    let mut all = Vec::new();
    for set in &classification.sets {
        all.extend(solve_levels(&build_pencil(set, params)?, params)?);
    }
    all.sort_by(|a, b| a.energy.partial_cmp(&b.energy).unwrap());
    Ok(all)
}
