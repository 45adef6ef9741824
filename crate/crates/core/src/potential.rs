//! The generalized Sinh-Gordon potential `V(x) = V1 sinh²(αx) + V2 cosh(αx)`
//! and its two complex relatives.
//!
//! Units are `ħ = 2m = 1` everywhere in the crate, so the Schrödinger
//! operator reads `-ψ'' + Vψ = Eψ`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The rate used by the complex variants; they are only defined at `α = 2`.
pub const COMPLEX_VARIANT_ALPHA: f64 = 2.0;

/// Which member of the potential family is meant.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// `V1 sinh²(αx) + V2 cosh(αx)` with real coefficients.
    #[default]
    RealSinhGordon,
    /// `V1 sinh²(2x) + i V2 cosh(2x)`.
    ImagCosh,
    /// `i V1 sinh²(2x) + V2 cosh(2x)`.
    ImagSinh,
}

impl Variant {
    pub fn tag(self) -> &'static str {
        match self {
            Variant::RealSinhGordon => "real",
            Variant::ImagCosh => "i-cosh",
            Variant::ImagSinh => "i-sinh",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" | "real-sinh-gordon" => Ok(Variant::RealSinhGordon),
            "i-cosh" | "imag-cosh" => Ok(Variant::ImagCosh),
            "i-sinh" | "imag-sinh" => Ok(Variant::ImagSinh),
            other => Err(Error::InvalidParameters(format!(
                "unknown variant `{other}` (expected real, i-cosh or i-sinh)"
            ))),
        }
    }
}

/// The coefficients `(V1, V2, α)`.
///
/// `α` is stored as `|α|`: the potential only sees `sinh²` and `cosh`, both
/// even in `α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    v1: f64,
    v2: f64,
    alpha: f64,
}

impl PotentialParams {
    pub fn new(v1: f64, v2: f64, alpha: f64) -> Result<Self> {
        if !(v1.is_finite() && v2.is_finite() && alpha.is_finite()) {
            return Err(Error::InvalidParameters(
                "v1, v2 and alpha must be finite".into(),
            ));
        }
        if alpha == 0.0 {
            return Err(Error::InvalidParameters("alpha must be nonzero".into()));
        }
        Ok(Self {
            v1,
            v2,
            alpha: alpha.abs(),
        })
    }

    pub fn v1(&self) -> f64 {
        self.v1
    }

    pub fn v2(&self) -> f64 {
        self.v2
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The dimensionless strength `s = √V1 / α`, defined for `V1 > 0`.
    pub fn s(&self) -> Result<f64> {
        self.require_positive_v1()?;
        Ok(self.v1.sqrt() / self.alpha)
    }

    /// Same parameters with a different `V2`.
    pub fn with_v2(&self, v2: f64) -> Result<Self> {
        Self::new(self.v1, v2, self.alpha)
    }

    pub(crate) fn require_positive_v1(&self) -> Result<()> {
        if self.v1 > 0.0 {
            Ok(())
        } else {
            Err(Error::UnsupportedBranch("v1 must be positive".into()))
        }
    }

    /// Real-variant value at `x`.
    pub fn real_value(&self, x: f64) -> f64 {
        let ax = self.alpha * x;
        let sh = ax.sinh();
        self.v1 * sh * sh + self.v2 * ax.cosh()
    }
}

/// Evaluate the selected potential at a real point.
pub fn evaluate_potential(params: &PotentialParams, variant: Variant, x: f64) -> Result<Complex64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("x must be finite, got {x}")));
    }
    let value = match variant {
        Variant::RealSinhGordon => Complex64::new(params.real_value(x), 0.0),
        Variant::ImagCosh | Variant::ImagSinh => {
            let ax = COMPLEX_VARIANT_ALPHA * x;
            let sh2 = ax.sinh().powi(2);
            let ch = ax.cosh();
            if variant == Variant::ImagCosh {
                Complex64::new(params.v1 * sh2, params.v2 * ch)
            } else {
                Complex64::new(params.v2 * ch, params.v1 * sh2)
            }
        }
    };
    Ok(value)
}

/// Outcome of [`classify_symmetry`].
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub variant: Variant,
    pub pt_symmetric: bool,
    /// Infinity exponent on the normalizable branch `C = -√V1/α`.
    pub lambda_value: Complex64,
    /// Both branches, `[C = -√V1/α, C = +√V1/α]`.
    pub lambda_candidates: [Complex64; 2],
    pub physical_qes_possible: bool,
    pub note: String,
}

/// Effective `(V1, V2, α)` of a variant, with the imaginary unit folded into
/// the coefficients.
fn effective_coefficients(params: &PotentialParams, variant: Variant) -> (Complex64, Complex64, f64) {
    let i = Complex64::i();
    match variant {
        Variant::RealSinhGordon => (params.v1.into(), params.v2.into(), params.alpha),
        Variant::ImagCosh => (params.v1.into(), i * params.v2, COMPLEX_VARIANT_ALPHA),
        Variant::ImagSinh => (i * params.v1, params.v2.into(), COMPLEX_VARIANT_ALPHA),
    }
}

/// Classify PT symmetry and compute the infinity exponent λ for any variant.
///
/// The exponent comes from the same infinity matching as
/// [`crate::qhj::infinity_analysis`], continued to complex coefficients:
/// `λ = V2 / (2 C α²)` with `C = ∓√V1/α`.
pub fn classify_symmetry(params: &PotentialParams, variant: Variant) -> Result<SymmetryReport> {
    if params.v1 == 0.0 {
        return Err(Error::DegeneratePotential(
            "v1 = 0 removes the sinh² term; the behaviour at infinity changes".into(),
        ));
    }
    let (v1, v2, alpha) = effective_coefficients(params, variant);
    let root = v1.sqrt();
    let c_physical = -root / alpha;
    let c_other = root / alpha;
    let lambda_of = |c: Complex64| v2 / (2.0 * c * alpha * alpha);
    let lambda_value = lambda_of(c_physical);
    let lambda_candidates = [lambda_value, lambda_of(c_other)];

    let pt_symmetric = variant != Variant::ImagSinh;
    let real_lambda = lambda_value.im == 0.0 && lambda_value.re > 0.0;
    let physical_qes_possible = variant == Variant::RealSinhGordon && params.v1 > 0.0 && real_lambda;

    let note = match variant {
        Variant::RealSinhGordon if physical_qes_possible => {
            "real coefficients: PT symmetric; lambda > 0 on the normalizable branch".to_string()
        }
        Variant::RealSinhGordon if params.v1 < 0.0 => {
            "v1 < 0: no normalizable branch at infinity, lambda is not real".to_string()
        }
        Variant::RealSinhGordon => {
            "lambda <= 0 on the normalizable branch (QES requires v2 < 0)".to_string()
        }
        Variant::ImagCosh => "PT symmetric under x -> i*pi/2 - x, i -> -i; lambda is complex, \
             so the QES conditions don't lead to physical solutions"
            .to_string(),
        Variant::ImagSinh => "not PT symmetric; lambda is complex, \
             so the QES conditions don't lead to physical solutions"
            .to_string(),
    };

    Ok(SymmetryReport {
        variant,
        pt_symmetric,
        lambda_value,
        lambda_candidates,
        physical_qes_possible,
        note,
    })
}
