use crate::error::{Error, Result};
use crate::potential::PotentialParams;

pub const MIN_POINTS: usize = 200;
pub const MAX_POINTS: usize = 200_000;

/// `s cosh(αL)` must reach this so the wavefunction tail is below `e^{-40}`.
pub const TAIL_EXPONENT: f64 = 40.0;

/// Uniform interior grid on `(-L, L)` with Dirichlet walls at `±L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub half_width: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidParameters("grid half-width must be positive".into()));
        }
        if points < MIN_POINTS {
            return Err(Error::InvalidParameters(format!(
                "grid needs at least {MIN_POINTS} points, got {points}"
            )));
        }
        Ok(Self { half_width, points })
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_width / (self.points + 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        -self.half_width + (i + 1) as f64 * self.step()
    }

    /// Same box, half the step; contains every point of `self`.
    pub fn refined(&self) -> Self {
        Self {
            half_width: self.half_width,
            points: 2 * self.points + 1,
        }
    }

    pub fn tail_satisfied(&self, params: &PotentialParams) -> Result<bool> {
        let s = params.s()?;
        // small slack for the round trip through arccosh
        Ok(s * (params.alpha() * self.half_width).cosh() >= TAIL_EXPONENT * (1.0 - 1e-12))
    }
}

/// Box and resolution for the oracle at `params`.
pub fn default_grid(params: &PotentialParams, levels_needed: usize) -> Result<GridSpec> {
    let s = params.s()?;
    let alpha = params.alpha();
    let half_width = (TAIL_EXPONENT / s).max(10.0).acosh() / alpha;
    let step = (0.002 / alpha).min(half_width / 1000.0);
    let points = ((2.0 * half_width / step).ceil() as usize).saturating_sub(1);
    let points = points.max(10 * levels_needed).clamp(MIN_POINTS, MAX_POINTS);
    GridSpec::new(half_width, points)
}
