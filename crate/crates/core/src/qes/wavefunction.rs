//! Closed-form eigenfunctions
//! `ψ = (y-1)^{p₁} (y+1)^{p₂} e^{C y} Pₙ(y)`, `y = cosh αx`.
//!
//! On the real line `(y-1)^{1/2} = √2 |sinh(αx/2)|` and
//! `(y+1)^{1/2} = √2 cosh(αx/2)`. The odd branch drops the absolute value,
//! which is the same as multiplying by `sign(x)`.

use num_complex::Complex64;
use crate::error::{Error, Result};
use crate::poly;
use crate::potential::PotentialParams;
use crate::qes::levels::{Parity, QesLevel};
use crate::qhj::{ratio_to_f64, Rational};

/// Number of samples on `[0, L]` used to fix the max-normalization.
const NORMALIZATION_SAMPLES: usize = 4001;

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormWavefunction {
    pub p1: Rational,
    pub p2: Rational,
    /// `-√V1/α`.
    pub c: f64,
    pub coefficients: Vec<f64>,
    pub alpha: f64,
    pub parity: Parity,
    /// `max |ψ_raw|` over the sampling window; [`evaluate_wavefunction`]
    /// divides by it.
    pub scale: f64,
}

/// Value and first two `x`-derivatives of one factor.
#[derive(Debug, Clone, Copy)]
struct Jet(f64, f64, f64);

impl Jet {
    fn product(self, o: Jet) -> Jet {
        Jet(
            self.0 * o.0,
            self.1 * o.0 + self.0 * o.1,
            self.2 * o.0 + 2.0 * self.1 * o.1 + self.0 * o.2,
        )
    }
}

/// Half-width of the window used to normalize: the oracle's default box.
pub fn sampling_half_width(s: f64, alpha: f64) -> f64 {
    (40.0 / s).max(10.0).acosh() / alpha
}

impl ClosedFormWavefunction {
    fn has_p1(&self) -> bool {
        self.p1 != Rational::from_integer(0)
    }

    fn has_p2(&self) -> bool {
        self.p2 != Rational::from_integer(0)
    }

    /// `ψ` and its derivatives before normalization.
    pub fn raw_jet(&self, x: f64) -> (f64, f64, f64) {
        let a = self.alpha;
        let half = 0.5 * a * x;
        let r2 = std::f64::consts::SQRT_2;
        let odd_factor = if self.has_p1() {
            Jet(r2 * half.sinh(), r2 * 0.5 * a * half.cosh(), r2 * 0.25 * a * a * half.sinh())
        } else {
            Jet(1.0, 0.0, 0.0)
        };
        let even_factor = if self.has_p2() {
            Jet(r2 * half.cosh(), r2 * 0.5 * a * half.sinh(), r2 * 0.25 * a * a * half.cosh())
        } else {
            Jet(1.0, 0.0, 0.0)
        };
        let y = (a * x).cosh();
        let dy = a * (a * x).sinh();
        let ddy = a * a * y;
        let e = (self.c * y).exp();
        let exponential = Jet(e, self.c * dy * e, (self.c * ddy + self.c * self.c * dy * dy) * e);
        let (p, dp, ddp) = poly::eval_with_derivatives(&self.coefficients, y);
        let polynomial = Jet(p, dp * dy, ddp * dy * dy + dp * ddy);
        let Jet(v, d, dd) = odd_factor
            .product(even_factor)
            .product(exponential)
            .product(polynomial);
        (v, d, dd)
    }

    /// Unnormalized `ψ(x)`, evaluated in log space so large `|x|` underflows
    /// cleanly to zero.
    pub fn raw(&self, x: f64) -> f64 {
        let ax = self.alpha * x;
        if ax.abs() < 20.0 {
            return self.raw_jet(x).0;
        }
        let y = ax.cosh();
        if !y.is_finite() {
            return 0.0;
        }
        let (p, _, _) = poly::eval_with_derivatives(&self.coefficients, y);
        if p == 0.0 {
            return 0.0;
        }
        let mut log = self.c * y + p.abs().ln();
        if self.has_p1() {
            log += 0.5 * (y - 1.0).ln();
        }
        if self.has_p2() {
            log += 0.5 * (y + 1.0).ln();
        }
        let mut sign = p.signum();
        if self.has_p1() && x < 0.0 {
            sign = -sign;
        }
        sign * log.exp()
    }

    /// Whether `x` is a zero of `ψ` (a moving pole of the momentum function).
    pub fn is_node(&self, x: f64) -> bool {
        if self.has_p1() && x == 0.0 {
            return true;
        }
        let y = (self.alpha * x).cosh();
        let (p, _, _) = poly::eval_with_derivatives(&self.coefficients, y);
        p.abs() <= 1e-14 * poly::magnitude_scale(&self.coefficients, y)
    }

    /// `(w, w')` with `w = ψ'/ψ`, from the closed form.
    pub fn log_derivative(&self, x: f64) -> Result<(f64, f64)> {
        if self.is_node(x) {
            return Err(Error::Pole(x));
        }
        let a = self.alpha;
        let half = 0.5 * a * x;
        let p1 = ratio_to_f64(&self.p1);
        let p2 = ratio_to_f64(&self.p2);
        let y = (a * x).cosh();
        let sh = (a * x).sinh();
        let (p, dp, ddp) = poly::eval_with_derivatives(&self.coefficients, y);
        let lp = dp / p;
        let mut w = a * (p2 * half.tanh() + sh * (self.c + lp));
        let mut dw = a * a * (p2 / (2.0 * half.cosh().powi(2)) + y * (self.c + lp) + sh * sh * (ddp / p - lp * lp));
        if p1 != 0.0 {
            w += a * p1 / half.tanh();
            dw -= a * a * p1 / (2.0 * half.sinh().powi(2));
        }
        Ok((w, dw))
    }
}

/// Golden-section search for the largest `|ψ|` in `[a, b]`.
fn refine_peak(wf: &ClosedFormWavefunction, mut a: f64, mut b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let f = |x: f64| wf.raw(x).abs();
    for _ in 0..80 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    f(0.5 * (a + b))
}

/// Assemble the closed form for a solved level.
pub fn wavefunction(level: &QesLevel, params: &PotentialParams) -> Result<ClosedFormWavefunction> {
    let s = params.s()?;
    let mut wf = ClosedFormWavefunction {
        p1: level.set.p1,
        p2: level.set.p2,
        c: -s,
        coefficients: level.coefficients.clone(),
        alpha: params.alpha(),
        parity: level.parity,
        scale: 1.0,
    };
    let l = sampling_half_width(s, params.alpha());
    let step = l / (NORMALIZATION_SAMPLES - 1) as f64;
    let (best, coarse) = (0..NORMALIZATION_SAMPLES)
        .map(|i| (i, wf.raw(i as f64 * step).abs()))
        .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    let max = coarse.max(refine_peak(&wf, (best as f64 - 1.0).max(0.0) * step, (best as f64 + 1.0) * step));
    if !(max > 0.0 && max.is_finite()) {
        return Err(Error::Numeric("wavefunction vanishes on the sampling window".into()));
    }
    wf.scale = max;
    Ok(wf)
}

/// `ψ(x)` normalized so that its maximum modulus on the sampling window is 1.
pub fn evaluate_wavefunction(wf: &ClosedFormWavefunction, x: f64) -> f64 {
    wf.raw(x) / wf.scale
}

/// `p(x) = -i ψ'/ψ`.
pub fn quantum_momentum(wf: &ClosedFormWavefunction, _energy: f64, x: f64) -> Result<Complex64> {
    let (w, _) = wf.log_derivative(x)?;
    Ok(Complex64::new(0.0, -w))
}

/// `p² - i p' - (E - V)` at `x`, measured against `max(1, |E|, |V|)`.
pub fn qhj_residual(wf: &ClosedFormWavefunction, params: &PotentialParams, energy: f64, x: f64) -> Result<f64> {
    let (w, dw) = wf.log_derivative(x)?;
    let p = Complex64::new(0.0, -w);
    let dp = Complex64::new(0.0, -dw);
    let v = params.real_value(x);
    let residual = p * p - Complex64::i() * dp - (energy - v);
    Ok(residual.norm() / 1f64.max(energy.abs()).max(v.abs()))
}

/// `|-ψ'' + (V - E)ψ| / (max(1, |E|) · max|ψ|)` at `x`, on the normalized ψ.
pub fn schrodinger_residual(wf: &ClosedFormWavefunction, params: &PotentialParams, energy: f64, x: f64) -> f64 {
    let (psi, _, dd) = wf.raw_jet(x);
    let r = -dd + (params.real_value(x) - energy) * psi;
    r.abs() / wf.scale / 1f64.max(energy.abs())
}
