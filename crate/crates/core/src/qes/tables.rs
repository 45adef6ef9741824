//! Side-by-side comparison of the reference tables (the QES conditions, and
//! the `M = 3` and `M = 2` levels) with what this crate computes.
//!
//! Every printed entry is re-evaluated at the requested `(V1, α)` and flagged
//! `matches-paper` or `paper-typo-suspected`. The flags are data; the oracle
//! adjudication lives in [`crate::oracle::verify`].

use crate::error::Result;
use crate::potential::PotentialParams;
use crate::qes::levels::QesLevel;
use crate::qes::wavefunction::{wavefunction, ClosedFormWavefunction};
use crate::qes::{build_pencil, solve_levels};
use crate::qhj::{qes_target_v2, ratio_to_f64, QesSet, Rational};

/// Printed and computed energies closer than this are the same value.
const ENERGY_MATCH: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adjudication {
    MatchesPaper,
    PaperTypoSuspected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Energy,
    Wavefunction,
}

/// One row of the QES-condition table.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionRow {
    pub set_index: u8,
    /// Residues as printed in the condition table.
    pub printed_b1: Rational,
    pub printed_b1_prime: Rational,
    /// Residues as used here; rows 3 and 4 follow the level tables.
    pub b1: Rational,
    pub b1_prime: Rational,
    pub printed_n: &'static str,
    pub printed_condition: &'static str,
    pub printed_qes_condition: &'static str,
    /// The column header's definition, `M = V2/(2√V1 α)`.
    pub m_printed_definition: &'static str,
    /// The reading consistent with the rows, `M = 2λ = |V2|/(√V1 α)`.
    pub m_reconciled_definition: &'static str,
    /// Smallest admissible `λ` (at `n = 0`) and the matching `M = 2λ`.
    pub lambda_at_n0: f64,
    pub m_reconciled_at_n0: f64,
    /// `M` under the printed definition at the same working point (negative:
    /// QES needs `V2 < 0`).
    pub m_printed_at_n0: f64,
    pub v2_at_n0: f64,
}

/// One printed entry of a level table next to its computed counterpart.
#[derive(Debug, Clone, PartialEq)]
pub struct TableEntry {
    pub table: &'static str,
    pub sets: Vec<u8>,
    pub quantity: Quantity,
    pub lambda: f64,
    pub v2: f64,
    pub printed: String,
    pub computed: String,
    pub printed_value: Option<f64>,
    pub computed_values: Vec<f64>,
    pub flag: Adjudication,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTables {
    pub v1: f64,
    pub alpha: f64,
    pub conditions: Vec<ConditionRow>,
    pub entries: Vec<TableEntry>,
}

impl ReferenceTables {
    pub fn flagged(&self, flag: Adjudication) -> impl Iterator<Item = &TableEntry> {
        self.entries.iter().filter(move |e| e.flag == flag)
    }
}

/// Energies printed in the level tables, evaluated at `(V1, α)`.
pub fn printed_energy(table: &str, set: u8, v1: f64, alpha: f64) -> Option<f64> {
    let a2 = alpha * alpha;
    let root = v1.sqrt();
    match (table, set) {
        ("3.2", 1) => Some(-a2 / 4.0 + alpha * root),
        ("3.2", 2) => Some(-a2),
        ("3.3", 3) | ("3.3", 4) => Some(-a2 / 4.0 - alpha * root),
        _ => None,
    }
}

/// Prefactors printed in the `M = 2` table, multiplying `e^{-(√V1/α) cosh αx}`.
fn printed_prefactor(set: u8, alpha: f64, x: f64) -> f64 {
    let y = (alpha * x).cosh();
    if set == 3 {
        y + 1.0
    } else {
        y - 1.0
    }
}

struct WorkingPoint {
    params: PotentialParams,
    lambda: f64,
    levels: Vec<(QesLevel, ClosedFormWavefunction)>,
}

fn working_point(sets: &[(u8, u32)], v1: f64, alpha: f64) -> Result<WorkingPoint> {
    let first = QesSet::new(sets[0].0, sets[0].1)?;
    let v2 = qes_target_v2(&first, v1, alpha)?;
    let params = PotentialParams::new(v1, v2, alpha)?;
    let mut levels = Vec::new();
    for &(i, n) in sets {
        let set = QesSet::new(i, n)?;
        for level in solve_levels(&build_pencil(&set, &params)?, &params)? {
            let wf = wavefunction(&level, &params)?;
            levels.push((level, wf));
        }
    }
    Ok(WorkingPoint {
        params,
        lambda: ratio_to_f64(&first.lambda()),
        levels,
    })
}

fn energy_entry(table: &'static str, set: u8, wp: &WorkingPoint, printed: &str) -> TableEntry {
    let (v1, alpha) = (wp.params.v1(), wp.params.alpha());
    let printed_value = printed_energy(table, set, v1, alpha);
    let computed_values: Vec<f64> = wp
        .levels
        .iter()
        .filter(|(l, _)| l.set.set_index == set)
        .map(|(l, _)| l.energy)
        .collect();
    let matches = printed_value
        .map(|p| computed_values.iter().any(|c| (c - p).abs() <= ENERGY_MATCH * p.abs().max(1.0)))
        .unwrap_or(false);
    let computed = match computed_values.len() {
        1 => "-alpha^2 (p1+p2)^2 + 2 alpha sqrt(V1) (p1-p2)".to_string(),
        _ => "-alpha^2 * eigenvalues of the secular pencil".to_string(),
    };
    let note = if matches {
        "printed energy is one of the computed levels".to_string()
    } else {
        "printed energy is not a level of this set; the oracle spectrum confirms the computed values".to_string()
    };
    TableEntry {
        table,
        sets: vec![set],
        quantity: Quantity::Energy,
        lambda: wp.lambda,
        v2: wp.params.v2(),
        printed: printed.to_string(),
        computed,
        printed_value,
        computed_values,
        flag: if matches {
            Adjudication::MatchesPaper
        } else {
            Adjudication::PaperTypoSuspected
        },
        note,
    }
}

/// Whether `f` is a constant multiple of the computed wavefunction on a set
/// of sample points away from the nodes.
fn proportional<F: Fn(f64) -> f64>(wf: &ClosedFormWavefunction, f: F) -> bool {
    let xs = [-2.3, -1.1, -0.45, 0.3, 0.9, 1.7, 2.6];
    let ratios: Vec<f64> = xs
        .iter()
        .filter(|x| !wf.is_node(**x))
        .map(|&x| f(x) / wf.raw(x))
        .collect();
    let first = ratios[0];
    first.is_finite() && ratios.iter().all(|r| (r - first).abs() <= 1e-9 * first.abs())
}

/// Build the three reference tables at `(V1, α)`.
pub fn reproduce_reference_tables(v1: f64, alpha: f64) -> Result<ReferenceTables> {
    let q = |n, d| Rational::new(n, d);
    let printed_rows: [(u8, Rational, Rational, &str, &str, &str); 4] = [
        (1, q(1, 4), q(1, 4), "(M-1)/2", "M odd, M >= 1", "M = 2n + 1"),
        (2, q(3, 4), q(3, 4), "(M-3)/2", "M odd, M >= 3", "M = 2n + 3"),
        (3, q(3, 4), q(1, 4), "(M-2)/2", "M even, M >= 2", "M = 2n + 2"),
        (4, q(1, 4), q(3, 4), "(M-2)/2", "M even, M >= 2", "M = 2n + 2"),
    ];
    let mut conditions = Vec::new();
    for (i, pb1, pb1p, n_text, cond, qes) in printed_rows {
        let set = QesSet::new(i, 0)?;
        let v2 = qes_target_v2(&set, v1, alpha)?;
        let lambda = ratio_to_f64(&set.lambda());
        conditions.push(ConditionRow {
            set_index: i,
            printed_b1: pb1,
            printed_b1_prime: pb1p,
            b1: set.b1,
            b1_prime: set.b1_prime,
            printed_n: n_text,
            printed_condition: cond,
            printed_qes_condition: qes,
            m_printed_definition: "V2/(2 sqrt(V1) alpha)",
            m_reconciled_definition: "2 lambda = -V2/(sqrt(V1) alpha)",
            lambda_at_n0: lambda,
            m_reconciled_at_n0: 2.0 * lambda,
            m_printed_at_n0: v2 / (2.0 * v1.sqrt() * alpha),
            v2_at_n0: v2,
        });
    }

    let mut entries = Vec::new();

    // M = 3: λ = 3/2, set 1 with n = 1 and set 2 with n = 0
    let m3 = working_point(&[(1, 1), (2, 0)], v1, alpha)?;
    entries.push(energy_entry("3.2", 1, &m3, "E1 = -alpha^2/4 + alpha sqrt(V1)"));
    entries.push(TableEntry {
        table: "3.2",
        sets: vec![1],
        quantity: Quantity::Wavefunction,
        lambda: m3.lambda,
        v2: m3.params.v2(),
        printed: "exp(-(sqrt(V1)/alpha) cosh(alpha x)) (gamma cosh(alpha x) + beta)".into(),
        computed: "exp(-(sqrt(V1)/alpha) cosh(alpha x)) (cosh(alpha x) + c0), c0 from the pencil eigenvector".into(),
        printed_value: None,
        computed_values: m3
            .levels
            .iter()
            .filter(|(l, _)| l.set.set_index == 1)
            .map(|(l, _)| l.coefficients[0])
            .collect(),
        flag: Adjudication::MatchesPaper,
        note: "same functional form; gamma and beta are not compared".into(),
    });
    entries.push(energy_entry("3.2", 2, &m3, "E0 = -alpha^2"));
    let set2_wf = &m3.levels.iter().find(|(l, _)| l.set.set_index == 2).unwrap().1;
    let s = v1.sqrt() / alpha;
    let set2_matches = proportional(set2_wf, |x| (-s * (alpha * x).cosh()).exp() * (alpha * x).sinh());
    entries.push(TableEntry {
        table: "3.2",
        sets: vec![2],
        quantity: Quantity::Wavefunction,
        lambda: m3.lambda,
        v2: m3.params.v2(),
        printed: "exp(-(sqrt(V1)/alpha) cosh(alpha x)) sinh(alpha x)".into(),
        computed: "(y-1)^(1/2) (y+1)^(1/2) exp(-(sqrt(V1)/alpha) y), y = cosh(alpha x), odd branch".into(),
        printed_value: None,
        computed_values: vec![],
        flag: if set2_matches {
            Adjudication::MatchesPaper
        } else {
            Adjudication::PaperTypoSuspected
        },
        note: "(y-1)^(1/2) (y+1)^(1/2) = |sinh(alpha x)|".into(),
    });

    // M = 2: λ = 1, sets 3 and 4 with n = 0
    let m2 = working_point(&[(3, 0), (4, 0)], v1, alpha)?;
    entries.push(energy_entry("3.3", 3, &m2, "E0 = -alpha^2/4 - alpha sqrt(V1)"));
    entries.push(energy_entry("3.3", 4, &m2, "E0 = -alpha^2/4 - alpha sqrt(V1)"));
    let prefactors_match = m2.levels.iter().all(|(l, wf)| {
        let set = l.set.set_index;
        proportional(wf, |x| (-s * (alpha * x).cosh()).exp() * printed_prefactor(set, alpha, x))
    });
    entries.push(TableEntry {
        table: "3.3",
        sets: vec![3, 4],
        quantity: Quantity::Wavefunction,
        lambda: m2.lambda,
        v2: m2.params.v2(),
        printed: "exp(-(sqrt(V1)/alpha) cosh(alpha x)) (cosh(alpha x) + 1) and (cosh(alpha x) - 1)".into(),
        computed: "exp(-(sqrt(V1)/alpha) cosh(alpha x)) (cosh(alpha x) + 1)^(1/2) and sign(x) (cosh(alpha x) - 1)^(1/2)".into(),
        printed_value: None,
        computed_values: vec![],
        flag: if prefactors_match {
            Adjudication::MatchesPaper
        } else {
            Adjudication::PaperTypoSuspected
        },
        note: "integrating the residue terms gives square roots of the printed prefactors".into(),
    });

    Ok(ReferenceTables {
        v1,
        alpha,
        conditions,
        entries,
    })
}
