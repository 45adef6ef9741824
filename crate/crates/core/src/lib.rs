//! Quasi-exactly-solvable levels of the generalized Sinh-Gordon potential
//!
//! ```text
//! V(x) = V1 sinh²(αx) + V2 cosh(αx)        (ħ = 2m = 1)
//! ```
//!
//! found from the pole structure of the quantum momentum function, and
//! checked against an independent finite-difference eigensolver.
//!
//! The pipeline, module by module:
//!
//! * [`potential`]: parameters, evaluation, PT classification of the real
//!   potential and its two complex relatives.
//! * [`qhj`]: the Riccati form of the quantum Hamilton–Jacobi equation,
//!   residues at the fixed poles `y = ±1`, the exponent λ at infinity, and
//!   the admissible residue sets.
//! * [`qes`]: the secular pencil for the polynomial factor, closed-form
//!   energies and eigenfunctions, moving-pole counts, and the reference
//!   table comparison.
//! * [`oracle`]: the finite-difference cross-check.
//! * [`cli`]: the `qhj-spectra` command line.
//!
//! ```
//! use qhj_spectra::{potential::PotentialParams, qhj, qes};
//!
//! let params = PotentialParams::new(1.0, -3.0, 1.0)?;
//! let lambda = qhj::infinity_analysis(&params)?.lambda;
//! assert_eq!(lambda, 1.5);
//!
//! let classification = qhj::enumerate_qes_sets(lambda, 1e-9)?;
//! let levels = qes::solve_classification(&params, &classification)?;
//! let energies: Vec<f64> = levels.iter().map(|l| l.energy).collect();
//! assert_eq!(energies.len(), 3);
//! assert_eq!(energies[1], -1.0);
//! # Ok::<(), qhj_spectra::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod potential;
pub mod qes;
pub mod qhj;
pub mod series;

pub use error::{Error, Result};

// The guide's chapters are compiled as doctests so their snippets stay in
// sync with the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/potential.md")]
    mod potential {}
    #[doc = include_str!("../../../book/src/riccati.md")]
    mod riccati {}
    #[doc = include_str!("../../../book/src/qes-condition.md")]
    mod qes_condition {}
    #[doc = include_str!("../../../book/src/pencil.md")]
    mod pencil {}
    #[doc = include_str!("../../../book/src/wavefunctions.md")]
    mod wavefunctions {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/reference-tables.md")]
    mod reference_tables {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
