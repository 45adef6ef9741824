use crate::error::{Error, Result};
use crate::oracle::{default_grid, discretize, lowest_eigenvalues, lowest_energies, node_count, sturm_count, GridSpec};
use crate::potential::PotentialParams;
use crate::qes::{solve_classification, Parity};
use crate::qhj::QesClassification;

/// Second-order scheme: halving `h` should divide the error by about 4.
pub const CONVERGENCE_RATIO_RANGE: (f64, f64) = (3.5, 4.5);

/// Relative antisymmetry allowed when reading parity off an oracle vector.
const PARITY_TOLERANCE: f64 = 1e-6;

/// An energy to be located in the oracle spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub label: String,
    pub set_index: Option<u8>,
    pub n: Option<u32>,
    pub energy: f64,
    pub node_count: Option<u32>,
    pub parity: Option<Parity>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRow {
    pub label: String,
    pub set_index: Option<u8>,
    pub n: Option<u32>,
    pub e_analytic: f64,
    /// Richardson-extrapolated oracle eigenvalue.
    pub e_oracle: f64,
    pub abs_gap: f64,
    pub oracle_index: usize,
    pub e_coarse: f64,
    pub e_fine: f64,
    /// `|E_h - E_analytic| / |E_{h/2} - E_analytic|`.
    pub error_ratio: f64,
    pub convergence_order: f64,
    pub convergence_ok: bool,
    pub node_count_analytic: Option<u32>,
    pub node_count_oracle: u32,
    pub parity_analytic: Option<Parity>,
    pub parity_oracle: Option<Parity>,
    pub parity_match: bool,
}

/// Oracle eigenvalues that no candidate claimed: the part of the spectrum
/// outside the closed-form block. At least two levels past the candidates
/// are always computed.
#[derive(Debug, Clone, PartialEq)]
pub struct UnmatchedLevel {
    pub index: usize,
    pub energy: f64,
    pub node_count: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub v1: f64,
    pub v2: f64,
    pub alpha: f64,
    pub tolerance: f64,
    pub grid: GridSpec,
    pub refined_grid: GridSpec,
    pub rows: Vec<VerificationRow>,
    pub unmatched: Vec<UnmatchedLevel>,
    pub convergence_order_estimate: f64,
    pub overall_pass: bool,
}

fn oracle_parity(v: &[f64]) -> Option<Parity> {
    let n = v.len();
    let max = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let deviation = |sign: f64| (0..n).map(|i| (v[i] - sign * v[n - 1 - i]).abs()).fold(0.0, f64::max);
    if deviation(1.0) < PARITY_TOLERANCE * max {
        Some(Parity::Even)
    } else if deviation(-1.0) < PARITY_TOLERANCE * max {
        Some(Parity::Odd)
    } else {
        None
    }
}

/// Locate each candidate energy in the oracle spectrum computed on `grid`
/// and on its refinement, and fill the report.
pub fn adjudicate(params: &PotentialParams, grid: &GridSpec, candidates: &[Candidate], tolerance: f64) -> Result<VerificationReport> {
    if candidates.is_empty() {
        return Err(Error::InvalidParameters("nothing to verify".into()));
    }
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidParameters("tolerance must be positive".into()));
    }
    let fine_grid = grid.refined();
    let top = candidates.iter().map(|c| c.energy).fold(f64::NEG_INFINITY, f64::max);
    let (diag, off) = discretize(params, grid);
    let k = (sturm_count(&diag, off, top + 1.0 + 10.0 * tolerance) + 1)
        .max(candidates.len() + 2)
        .min(grid.points / 10);

    let (coarse, fine) = std::thread::scope(|scope| {
        let fine = scope.spawn(|| lowest_energies(params, &fine_grid, k));
        let coarse = lowest_eigenvalues(params, grid, k);
        (coarse, fine.join().expect("oracle thread panicked"))
    });
    let coarse = coarse?;
    let fine = fine?;
    let extrapolated: Vec<f64> = coarse
        .eigenvalues
        .iter()
        .zip(&fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect();

    let mut claimed: Vec<Option<usize>> = vec![None; k];
    let mut rows = Vec::with_capacity(candidates.len());
    for (ci, cand) in candidates.iter().enumerate() {
        let (index, gap) = extrapolated
            .iter()
            .enumerate()
            .map(|(i, e)| (i, (e - cand.energy).abs()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if gap > 10.0 * tolerance {
            return Err(Error::OracleMismatch {
                energy: cand.energy,
                window: 10.0 * tolerance,
            });
        }
        if let Some(prev) = claimed[index] {
            return Err(Error::OracleCollision {
                first: candidates[prev].energy,
                second: cand.energy,
            });
        }
        claimed[index] = Some(ci);

        let e_coarse = coarse.eigenvalues[index];
        let e_fine = fine[index];
        let error_ratio = (e_coarse - cand.energy).abs() / (e_fine - cand.energy).abs();
        let vector = &coarse.eigenvectors[index];
        let parity_oracle = oracle_parity(vector);
        rows.push(VerificationRow {
            label: cand.label.clone(),
            set_index: cand.set_index,
            n: cand.n,
            e_analytic: cand.energy,
            e_oracle: extrapolated[index],
            abs_gap: gap,
            oracle_index: index,
            e_coarse,
            e_fine,
            error_ratio,
            convergence_order: error_ratio.log2(),
            convergence_ok: error_ratio >= CONVERGENCE_RATIO_RANGE.0 && error_ratio <= CONVERGENCE_RATIO_RANGE.1,
            node_count_analytic: cand.node_count,
            node_count_oracle: node_count(vector)? as u32,
            parity_analytic: cand.parity,
            parity_oracle,
            parity_match: cand.parity.is_none_or(|p| Some(p) == parity_oracle),
        });
    }

    let unmatched = (0..k)
        .filter(|i| claimed[*i].is_none())
        .map(|i| {
            Ok(UnmatchedLevel {
                index: i,
                energy: extrapolated[i],
                node_count: node_count(&coarse.eigenvectors[i])? as u32,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let convergence_order_estimate = rows.iter().map(|r| r.convergence_order).sum::<f64>() / rows.len() as f64;
    let overall_pass = rows.iter().all(|r| {
        r.abs_gap <= tolerance
            && r.parity_match
            && r.node_count_analytic.is_none_or(|n| n == r.node_count_oracle)
    });
    Ok(VerificationReport {
        v1: params.v1(),
        v2: params.v2(),
        alpha: params.alpha(),
        tolerance,
        grid: *grid,
        refined_grid: fine_grid,
        rows,
        unmatched,
        convergence_order_estimate,
        overall_pass,
    })
}

/// Solve every level of `classification` in closed form and check it
/// against the oracle.
pub fn verify_qes(params: &PotentialParams, classification: &QesClassification, tolerance: f64, grid: Option<GridSpec>) -> Result<VerificationReport> {
    if classification.is_empty() {
        return Err(Error::NoAdmissibleSets(classification.lambda));
    }
    let levels = solve_classification(params, classification)?;
    let grid = match grid {
        Some(g) => {
            if !g.tail_satisfied(params)? {
                return Err(Error::InvalidParameters(
                    "grid half-width violates the tail criterion s cosh(alpha L) >= 40".into(),
                ));
            }
            g
        }
        None => default_grid(params, levels.len() + 2)?,
    };
    let candidates: Vec<Candidate> = levels
        .iter()
        .map(|l| Candidate {
            label: format!("set {} n={} E={}", l.set.set_index, l.set.n, l.energy),
            set_index: Some(l.set.set_index),
            n: Some(l.set.n),
            energy: l.energy,
            node_count: Some(l.node_count),
            parity: Some(l.parity),
        })
        .collect();
    adjudicate(params, &grid, &candidates, tolerance)
}
