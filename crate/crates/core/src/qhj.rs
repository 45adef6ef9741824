//! Pole analysis of the quantum Hamilton–Jacobi equation.
//!
//! With `y = cosh αx` and the two substitutions
//!
//! ```text
//! p = -iα √(y²-1) φ,        φ = χ - y / (2(y²-1)),
//! ```
//!
//! the QHJ equation `p² - i p' = E - V` becomes the Riccati equation
//! `χ' + χ² + G(y) = 0` with the fixed term
//!
//! ```text
//! G(y) = (y²+2) / (4(y²-1)²) + (E - V1 y² - V2 y + V1) / (α²(y²-1)).
//! ```
//!
//! `χ` has fixed poles at `y = ±1` whose residues solve the indicial
//! quadratic `b² - b + g = 0` (`g` the double-pole strength of `G`), and it
//! tends to a constant `C` at infinity with a `λ/y` correction. Quasi-exact
//! solvability is the balance `b₁ + b₁' + n = λ`.

use std::fmt;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Signed;
use crate::error::{Error, Result};
use crate::potential::PotentialParams;
use crate::series::{rational_about, rational_at_infinity, Laurent};

/// Exact rational scalar used for residues and exponents.
pub type Rational = Ratio<i64>;

/// Default integrality tolerance for `n = λ - b₁ - b₁'`.
pub const DEFAULT_INTEGRALITY_TOLERANCE: f64 = 1e-9;

fn q(n: i64, d: i64) -> Rational {
    Ratio::new(n, d)
}

/// One of the two fixed poles of the Riccati equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixedPole {
    /// `y = +1`, i.e. `x = 0`.
    Plus,
    /// `y = -1`, reached only for complex `x`.
    Minus,
}

impl FixedPole {
    pub fn location(self) -> i64 {
        match self {
            FixedPole::Plus => 1,
            FixedPole::Minus => -1,
        }
    }
}

/// The fixed term `G(y)` of the Riccati equation with the energy kept
/// symbolic: `G = structural + potential_part + E · energy_part`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiFixedTerm {
    v1: f64,
    v2: f64,
    alpha: f64,
}

impl RiccatiFixedTerm {
    /// Numerator of the structural part over `(y²-1)²`: `(y²+2)/4`.
    pub fn structural_numerator() -> [Rational; 3] {
        [q(1, 2), q(0, 1), q(1, 4)]
    }

    /// `(y²-1)²` in ascending powers.
    pub fn structural_denominator() -> [Rational; 5] {
        [q(1, 1), q(0, 1), q(-2, 1), q(0, 1), q(1, 1)]
    }

    /// Numerator over `(y²-1)` of the energy-independent potential part:
    /// `(V1 - V2 y - V1 y²)/α²`.
    pub fn potential_numerator(&self) -> [f64; 3] {
        let a2 = self.alpha * self.alpha;
        [self.v1 / a2, -self.v2 / a2, -self.v1 / a2]
    }

    /// Numerator over `(y²-1)` of the part linear in `E` (per unit `E`).
    pub fn energy_numerator(&self) -> [f64; 1] {
        [1.0 / (self.alpha * self.alpha)]
    }

    pub fn params(&self) -> (f64, f64, f64) {
        (self.v1, self.v2, self.alpha)
    }

    /// The `E`-independent part of `G` at `y`.
    pub fn e_independent(&self, y: Complex64) -> Complex64 {
        let w = y * y - 1.0;
        let [c0, c1, c2] = self.potential_numerator();
        (y * y + 2.0) / (4.0 * w * w) + (c0 + c1 * y + c2 * y * y) / w
    }

    /// Coefficient of `E` in `G` at `y`.
    pub fn e_linear(&self, y: Complex64) -> Complex64 {
        self.energy_numerator()[0] / (y * y - 1.0)
    }

    /// `G(y)` at a concrete energy. Singular at `y = ±1`.
    pub fn evaluate(&self, y: Complex64, energy: f64) -> Complex64 {
        self.e_independent(y) + energy * self.e_linear(y)
    }

    /// Strength of the double pole of `G` at a fixed pole, extracted by
    /// Laurent expansion.
    ///
    /// Only the structural part can contribute at order `(y∓1)⁻²`; the
    /// potential and energy parts have simple poles, which is checked on
    /// their own expansions.
    pub fn double_pole_coefficient(&self, pole: FixedPole) -> Result<Rational> {
        let y0 = q(pole.location(), 1);
        let structural = rational_about(
            &Self::structural_numerator(),
            &Self::structural_denominator(),
            &y0,
            1,
        )
        .ok_or_else(|| Error::Numeric("structural expansion failed".into()))?;
        let rest = self.potential_laurent(pole, 1.0, 1)?;
        if rest.coeff(-2) != Some(0.0) {
            return Err(Error::InvariantViolation(
                "potential part of G has a double pole".into(),
            ));
        }
        structural
            .coeff(-2)
            .ok_or_else(|| Error::Numeric("double-pole coefficient unavailable".into()))
    }

    /// Laurent expansion of the non-structural part `(E - V1 y² - V2 y + V1)/(α²(y²-1))`.
    fn potential_laurent(&self, pole: FixedPole, energy: f64, order: i32) -> Result<Laurent<f64>> {
        let mut num = self.potential_numerator();
        num[0] += energy * self.energy_numerator()[0];
        rational_about(&num, &[-1.0, 0.0, 1.0], &(pole.location() as f64), order)
            .ok_or_else(|| Error::Numeric("potential expansion failed".into()))
    }

    /// Full Laurent expansion of `G` about a fixed pole at a concrete energy,
    /// in powers of `y - y0`, known up to `order`.
    pub fn laurent_about(&self, pole: FixedPole, energy: f64, order: i32) -> Result<Laurent<f64>> {
        let to_f64 = |c: &Rational| *c.numer() as f64 / *c.denom() as f64;
        let num: Vec<f64> = Self::structural_numerator().iter().map(to_f64).collect();
        let den: Vec<f64> = Self::structural_denominator().iter().map(to_f64).collect();
        let structural = rational_about(&num, &den, &(pole.location() as f64), order)
            .ok_or_else(|| Error::Numeric("structural expansion failed".into()))?;
        Ok(structural.add(&self.potential_laurent(pole, energy, order)?))
    }

    /// Expansion of `G` at infinity in powers of `u = 1/y`.
    pub fn laurent_at_infinity(&self, energy: f64, order: i32) -> Result<Laurent<f64>> {
        let structural = rational_at_infinity(&[2.0, 0.0, 1.0], &[4.0, 0.0, -8.0, 0.0, 4.0], order);
        let mut num = self.potential_numerator();
        num[0] += energy * self.energy_numerator()[0];
        let rest = rational_at_infinity(&num, &[-1.0, 0.0, 1.0], order);
        match (structural, rest) {
            (Some(a), Some(b)) => Ok(a.add(&b)),
            _ => Err(Error::Numeric("expansion at infinity failed".into())),
        }
    }
}

/// Build the Riccati fixed term for a real potential.
pub fn riccati_fixed_term(params: &PotentialParams) -> Result<RiccatiFixedTerm> {
    params.require_positive_v1()?;
    Ok(RiccatiFixedTerm {
        v1: params.v1(),
        v2: params.v2(),
        alpha: params.alpha(),
    })
}

/// Roots of the indicial quadratic `b² - b + g = 0`, ascending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IndicialRoots {
    /// The discriminant `1 - 4g` is the square of a rational.
    Exact([Rational; 2]),
    Irrational([f64; 2]),
}

impl IndicialRoots {
    pub fn as_f64(&self) -> [f64; 2] {
        match self {
            IndicialRoots::Exact([a, b]) => [ratio_to_f64(a), ratio_to_f64(b)],
            IndicialRoots::Irrational(r) => *r,
        }
    }
}

pub fn ratio_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn exact_isqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    Some(Ratio::new(exact_isqrt(*r.numer())?, exact_isqrt(*r.denom())?))
}

/// Solve the indicial quadratic for the residues at a double pole of
/// strength `g`.
pub fn indicial_residues(double_pole_coefficient: Rational) -> Result<IndicialRoots> {
    let disc = q(1, 1) - double_pole_coefficient * 4;
    if disc.is_negative() {
        return Err(Error::ComplexResidues {
            discriminant: ratio_to_f64(&disc),
        });
    }
    Ok(match rational_sqrt(&disc) {
        Some(root) => {
            let half = q(1, 2);
            IndicialRoots::Exact([(q(1, 1) - root) * half, (q(1, 1) + root) * half])
        }
        None => {
            let root = ratio_to_f64(&disc).sqrt();
            IndicialRoots::Irrational([(1.0 - root) / 2.0, (1.0 + root) / 2.0])
        }
    })
}

/// Residues of `χ` at one fixed pole.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPoleAnalysis {
    pub location: FixedPole,
    pub residues: [Rational; 2],
    pub double_pole_coefficient: Rational,
    /// `±√V1/α`, the constants `χ` tends to at infinity.
    pub asymptotic_constants: [f64; 2],
}

pub fn fixed_pole_analysis(term: &RiccatiFixedTerm, pole: FixedPole) -> Result<FixedPoleAnalysis> {
    let g = term.double_pole_coefficient(pole)?;
    let residues = match indicial_residues(g)? {
        IndicialRoots::Exact(r) => r,
        IndicialRoots::Irrational(_) => {
            return Err(Error::InvariantViolation(
                "fixed-pole residues must be rational".into(),
            ))
        }
    };
    let s = term.v1.sqrt() / term.alpha;
    Ok(FixedPoleAnalysis {
        location: pole,
        residues,
        double_pole_coefficient: g,
        asymptotic_constants: [s, -s],
    })
}

/// Matching of `χ = C + λ/y + …` at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfinityAnalysis {
    /// `[+√V1/α, -√V1/α]`.
    pub c_candidates: [f64; 2],
    /// The normalizable branch `-√V1/α`.
    pub c_physical: f64,
    pub lambda: f64,
    /// `2λ`, the reading under which the reference table's rows are
    /// consistent with `b₁ + b₁' + n = λ`.
    pub m_paper: f64,
}

/// Order `1`: `C² = V1/α²`. Order `1/y`: `2Cλ = V2/α²`.
pub fn infinity_analysis(params: &PotentialParams) -> Result<InfinityAnalysis> {
    let s = params.s()?;
    let alpha = params.alpha();
    let c_physical = -s;
    let lambda = params.v2() / (2.0 * c_physical * alpha * alpha);
    Ok(InfinityAnalysis {
        c_candidates: [s, -s],
        c_physical,
        lambda,
        m_paper: 2.0 * lambda,
    })
}

/// A residue pair together with the polynomial degree it admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QesSet {
    pub set_index: u8,
    pub b1: Rational,
    pub b1_prime: Rational,
    pub n: u32,
    /// Exponent of `(y-1)` in the wavefunction, `b₁ - 1/4`.
    pub p1: Rational,
    /// Exponent of `(y+1)` in the wavefunction, `b₁' - 1/4`.
    pub p2: Rational,
}

/// `(b₁, b₁')` for sets 1 to 4.
pub const RESIDUE_PAIRS: [((i64, i64), (i64, i64)); 4] = [
    ((1, 4), (1, 4)),
    ((3, 4), (3, 4)),
    ((1, 4), (3, 4)),
    ((3, 4), (1, 4)),
];

impl QesSet {
    pub fn new(set_index: u8, n: u32) -> Result<Self> {
        if !(1..=4).contains(&set_index) {
            return Err(Error::InvalidParameters(format!(
                "set index must be 1..4, got {set_index}"
            )));
        }
        let ((a, b), (c, d)) = RESIDUE_PAIRS[set_index as usize - 1];
        let b1 = q(a, b);
        let b1_prime = q(c, d);
        Ok(Self {
            set_index,
            b1,
            b1_prime,
            n,
            p1: b1 - q(1, 4),
            p2: b1_prime - q(1, 4),
        })
    }

    /// `b₁ + b₁' + n`, the λ this set requires.
    pub fn lambda(&self) -> Rational {
        self.b1 + self.b1_prime + Ratio::from_integer(self.n as i64)
    }

    pub fn is_odd(&self) -> bool {
        self.b1 == q(3, 4)
    }
}

impl fmt::Display for QesSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "set {} (b1={}, b1'={}, n={})", self.set_index, self.b1, self.b1_prime, self.n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QesClassification {
    pub lambda: f64,
    pub sets: Vec<QesSet>,
    pub total_levels: u32,
}

impl QesClassification {
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Admit every residue pair for which `λ - b₁ - b₁'` is a non-negative
/// integer to within `tolerance`.
pub fn enumerate_qes_sets(lambda: f64, tolerance: f64) -> Result<QesClassification> {
    if !lambda.is_finite() {
        return Err(Error::Domain(format!("lambda must be finite, got {lambda}")));
    }
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(Error::Domain("tolerance must be non-negative".into()));
    }
    let mut sets = Vec::new();
    if lambda > 0.0 {
        for (i, ((a, b), (c, d))) in RESIDUE_PAIRS.iter().enumerate() {
            let n = lambda - *a as f64 / *b as f64 - *c as f64 / *d as f64;
            let rounded = n.round();
            if rounded >= 0.0 && (n - rounded).abs() <= tolerance {
                sets.push(QesSet::new(i as u8 + 1, rounded as u32)?);
            }
        }
    }
    let total_levels = sets.iter().map(|s| s.n + 1).sum();
    Ok(QesClassification {
        lambda,
        sets,
        total_levels,
    })
}

/// The `V2` that makes `set` admissible: `V2 = -2√V1 α (b₁ + b₁' + n)`.
pub fn qes_target_v2(set: &QesSet, v1: f64, alpha: f64) -> Result<f64> {
    if !(v1 > 0.0 && alpha > 0.0) {
        return Err(Error::InvalidParameters(
            "v1 and alpha must be positive".into(),
        ));
    }
    Ok(-2.0 * v1.sqrt() * alpha * ratio_to_f64(&set.lambda()))
}

/// Whether `params` satisfy the QES condition of `set` to `rel_tol`.
pub fn satisfies_qes_condition(set: &QesSet, params: &PotentialParams, rel_tol: f64) -> Result<bool> {
    let required = qes_target_v2(set, params.v1(), params.alpha())?;
    Ok((params.v2() - required).abs() <= rel_tol * required.abs().max(f64::MIN_POSITIVE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Laurent;

    fn params(v1: f64, v2: f64, alpha: f64) -> PotentialParams {
        PotentialParams::new(v1, v2, alpha).unwrap()
    }

    #[test]
    fn fixed_term_at_origin() {
        let g = riccati_fixed_term(&params(1.0, -3.0, 1.0)).unwrap();
        let v = g.evaluate(Complex64::new(0.0, 0.0), 0.0);
        assert!((v.re + 0.5).abs() < 1e-15 && v.im == 0.0);
    }

    #[test]
    fn fixed_term_requires_positive_v1() {
        assert!(matches!(
            riccati_fixed_term(&params(-1.0, -3.0, 1.0)),
            Err(Error::UnsupportedBranch(_))
        ));
        assert!(riccati_fixed_term(&params(0.0, -3.0, 1.0)).is_err());
    }

    #[test]
    fn fixed_term_parity_without_v2() {
        let g = riccati_fixed_term(&params(2.3, 0.0, 0.7)).unwrap();
        for y in [0.1, 0.5, 2.0, 7.5] {
            let a = g.evaluate(Complex64::new(y, 0.3), 1.7);
            let b = g.evaluate(Complex64::new(-y, -0.3), 1.7);
            assert!((a - b).norm() < 1e-12 * a.norm().max(1.0));
        }
    }

    #[test]
    fn double_pole_strength_numerically() {
        // limit of (y-1)² G as y → 1
        let g = riccati_fixed_term(&params(1.3, -2.1, 0.9)).unwrap();
        let eps = 1e-6;
        let y = Complex64::new(1.0 + eps, 0.0);
        let lim = (eps * eps) * g.evaluate(y, 0.4);
        assert!((lim.re - 3.0 / 16.0).abs() < 1e-5);
        assert_eq!(g.double_pole_coefficient(FixedPole::Plus).unwrap(), q(3, 16));
        assert_eq!(g.double_pole_coefficient(FixedPole::Minus).unwrap(), q(3, 16));
    }

    #[test]
    fn indicial_examples() {
        assert_eq!(indicial_residues(q(3, 16)).unwrap(), IndicialRoots::Exact([q(1, 4), q(3, 4)]));
        assert_eq!(indicial_residues(q(0, 1)).unwrap(), IndicialRoots::Exact([q(0, 1), q(1, 1)]));
        assert_eq!(indicial_residues(q(1, 4)).unwrap(), IndicialRoots::Exact([q(1, 2), q(1, 2)]));
        assert!(matches!(indicial_residues(q(1, 3)), Err(Error::ComplexResidues { .. })));
        match indicial_residues(q(1, 8)).unwrap() {
            IndicialRoots::Irrational([a, b]) => {
                assert!((a * b - 0.125).abs() < 1e-15);
                assert!((a + b - 1.0).abs() < 1e-15);
            }
            other => panic!("expected irrational roots, got {other:?}"),
        }
    }

    #[test]
    fn infinity_examples() {
        let a = infinity_analysis(&params(1.0, -3.0, 1.0)).unwrap();
        assert_eq!(a.lambda, 1.5);
        assert_eq!(a.c_physical, -1.0);
        assert_eq!(a.m_paper, 3.0);
        assert_eq!(infinity_analysis(&params(1.0, 3.0, 1.0)).unwrap().lambda, -1.5);
        assert_eq!(infinity_analysis(&params(4.0, -8.0, 2.0)).unwrap().lambda, 1.0);
    }

    /// Brute-force matching at infinity: with χ = a0 + λ/y + λ1/y², the
    /// residual of χ' + χ² + G must vanish at orders u⁰ and u¹.
    #[test]
    fn infinity_matches_series_residual() {
        let p = params(1.7, -2.4, 0.8);
        let a = infinity_analysis(&p).unwrap();
        let g = riccati_fixed_term(&p).unwrap();
        let gs = g.laurent_at_infinity(0.37, 4).unwrap();
        for c in a.c_candidates {
            // λ on this branch from order-1/y balance
            let lambda = p.v2() / (2.0 * c * p.alpha().powi(2));
            let chi = Laurent::new(0, vec![c, lambda, 0.0, 0.0]);
            let residual = chi.derivative_in_reciprocal().add(&chi.mul(&chi)).add(&gs);
            assert!(residual.coeff(0).unwrap().abs() < 1e-12);
            assert!(residual.coeff(1).unwrap().abs() < 1e-12);
        }
        let physical = p.v2() / (2.0 * a.c_physical * p.alpha().powi(2));
        assert!((physical - a.lambda).abs() < 1e-15);
    }

    #[test]
    fn table_rows() {
        let c = enumerate_qes_sets(1.5, DEFAULT_INTEGRALITY_TOLERANCE).unwrap();
        let got: Vec<_> = c.sets.iter().map(|s| (s.set_index, s.n)).collect();
        assert_eq!(got, vec![(1, 1), (2, 0)]);
        assert_eq!(c.total_levels, 3);

        let c = enumerate_qes_sets(1.0, DEFAULT_INTEGRALITY_TOLERANCE).unwrap();
        let got: Vec<_> = c.sets.iter().map(|s| (s.set_index, s.n)).collect();
        assert_eq!(got, vec![(3, 0), (4, 0)]);
        assert_eq!(c.total_levels, 2);

        assert!(enumerate_qes_sets(0.7, DEFAULT_INTEGRALITY_TOLERANCE).unwrap().is_empty());
        assert!(enumerate_qes_sets(-1.5, DEFAULT_INTEGRALITY_TOLERANCE).unwrap().is_empty());
        assert!(enumerate_qes_sets(f64::NAN, 1e-9).is_err());
    }

    #[test]
    fn half_lambda_admits_only_set_one() {
        let c = enumerate_qes_sets(0.5, 1e-9).unwrap();
        assert_eq!(c.sets.len(), 1);
        assert_eq!((c.sets[0].set_index, c.sets[0].n), (1, 0));
    }

    #[test]
    fn target_v2_examples() {
        let v2 = |i, n| qes_target_v2(&QesSet::new(i, n).unwrap(), 1.0, 1.0).unwrap();
        assert_eq!(v2(2, 0), -3.0);
        assert_eq!(v2(3, 0), -2.0);
        assert_eq!(v2(1, 0), -1.0);
    }

    #[test]
    fn set_exponents() {
        for i in 1..=4 {
            let s = QesSet::new(i, 0).unwrap();
            for p in [s.p1, s.p2] {
                assert!(p == q(0, 1) || p == q(1, 2));
            }
        }
        assert!(QesSet::new(0, 0).is_err());
        assert!(QesSet::new(5, 0).is_err());
    }
}
