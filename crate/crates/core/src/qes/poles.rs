//! Moving-pole bookkeeping: the number of nodes the polynomial factor
//! contributes, counted with the argument principle on `Pₙ'/Pₙ` around a
//! rectangle covering the physical region `y > 1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use crate::error::{Error, Result};
use crate::poly;
use crate::qes::levels::QesLevel;

/// Roots closer than this to the contour abort the count.
pub const CONTOUR_CLEARANCE: f64 = 1e-8;

/// The winding number must land this close to an integer.
pub const WINDING_TOLERANCE: f64 = 1e-3;

/// Half-height of the rectangle in `Im y`.
const HALF_HEIGHT: f64 = 0.5;

#[allow(clippy::excessive_precision)]
const GAUSS_NODES: [(f64, f64); 4] = [
    (0.183_434_642_495_649_8, 0.362_683_783_378_362_0),
    (0.525_532_409_916_329_0, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_5),
    (0.960_289_856_497_536_3, 0.101_228_536_290_376_3),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MovingPoleCount {
    pub count: u32,
    /// `(1/2πi) ∮ P'/P dz` before rounding.
    pub winding: f64,
    /// Right edge of the rectangle, `Re y`.
    pub right_edge: f64,
}

/// Axis-aligned rectangle `[left, right] × [-h, h]` in the `y` plane.
#[derive(Debug, Clone, Copy)]
pub struct Rectangle {
    pub left: f64,
    pub right: f64,
    pub half_height: f64,
}

impl Rectangle {
    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.left, -self.half_height),
            Complex64::new(self.right, -self.half_height),
            Complex64::new(self.right, self.half_height),
            Complex64::new(self.left, self.half_height),
        ]
    }

    /// Distance from `z` to the boundary.
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        let dx = |x: f64| {
            if z.im.abs() <= self.half_height {
                (z.re - x).abs()
            } else {
                Complex64::new(z.re - x, z.im.abs() - self.half_height).norm()
            }
        };
        let dy = |y: f64| {
            if z.re >= self.left && z.re <= self.right {
                (z.im - y).abs()
            } else {
                let nearest = z.re.clamp(self.left, self.right);
                Complex64::new(z.re - nearest, z.im - y).norm()
            }
        };
        dx(self.left)
            .min(dx(self.right))
            .min(dy(self.half_height))
            .min(dy(-self.half_height))
    }
}

fn gauss_segment<F: Fn(Complex64) -> Complex64>(f: &F, a: Complex64, b: Complex64) -> Complex64 {
    let mid = (a + b) * 0.5;
    let half = (b - a) * 0.5;
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in GAUSS_NODES {
        acc += w * (f(mid + half * x) + f(mid - half * x));
    }
    acc * half
}

fn adaptive<F: Fn(Complex64) -> Complex64>(f: &F, a: Complex64, b: Complex64, whole: Complex64, tol: f64, depth: u32) -> Complex64 {
    let mid = (a + b) * 0.5;
    let left = gauss_segment(f, a, mid);
    let right = gauss_segment(f, mid, b);
    let refined = left + right;
    let floor = 1e-13 * (left.norm() + right.norm()).max(1.0);
    if depth == 0 || (refined - whole).norm() <= tol.max(floor) {
        return refined;
    }
    adaptive(f, a, mid, left, 0.5 * tol, depth - 1) + adaptive(f, mid, b, right, 0.5 * tol, depth - 1)
}

/// `(1/2πi) ∮ P'/P dz` around the rectangle, counter-clockwise.
pub fn winding_number(coefficients: &[f64], rect: &Rectangle) -> f64 {
    let f = |z: Complex64| {
        let (p, dp) = poly::eval_complex(coefficients, z);
        dp / p
    };
    let c = rect.corners();
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        let (a, b) = (c[i], c[(i + 1) % 4]);
        let whole = gauss_segment(&f, a, b);
        total += adaptive(&f, a, b, whole, 1e-10, 40);
    }
    (total / Complex64::new(0.0, 2.0 * PI)).re
}

/// The rectangle used for a level: from `Re y = 1` out past every root.
pub fn physical_rectangle(level: &QesLevel, s: f64) -> Rectangle {
    let n = level.coefficients.len().saturating_sub(1) as f64;
    let nominal = 1.0 + (n + 2.0) * (1.0 + 1.0 / s);
    let right = nominal.max(2.0 + poly::cauchy_bound(&level.coefficients));
    Rectangle {
        left: 1.0,
        right,
        half_height: HALF_HEIGHT,
    }
}

/// Count the zeros of `Pₙ` in the physical region with the argument
/// principle; `s = √V1/α` sizes the rectangle.
pub fn count_moving_poles(level: &QesLevel, s: f64) -> Result<MovingPoleCount> {
    let rect = physical_rectangle(level, s);
    if level.coefficients.len() <= 1 {
        return Ok(MovingPoleCount {
            count: 0,
            winding: 0.0,
            right_edge: rect.right,
        });
    }
    for z in poly::roots(&level.coefficients) {
        let d = rect.boundary_distance(z);
        if d < CONTOUR_CLEARANCE {
            return Err(Error::ContourCollision { distance: d });
        }
    }
    let winding = winding_number(&level.coefficients, &rect);
    let rounded = winding.round();
    if (winding - rounded).abs() > WINDING_TOLERANCE || rounded < 0.0 {
        return Err(Error::Numeric(format!(
            "argument-principle integral {winding} is not near an integer"
        )));
    }
    Ok(MovingPoleCount {
        count: rounded as u32,
        winding,
        right_edge: rect.right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::PotentialParams;
    use crate::qes::{build_pencil, solve_levels};
    use crate::qhj::{qes_target_v2, QesSet};

    fn levels(set: u8, n: u32, v1: f64) -> Vec<QesLevel> {
        let set = QesSet::new(set, n).unwrap();
        let params = PotentialParams::new(v1, qes_target_v2(&set, v1, 1.0).unwrap(), 1.0).unwrap();
        solve_levels(&build_pencil(&set, &params).unwrap(), &params).unwrap()
    }

    #[test]
    fn constant_polynomial_has_no_moving_poles() {
        let l = &levels(2, 0, 1.0)[0];
        assert_eq!(count_moving_poles(l, 1.0).unwrap().count, 0);
    }

    #[test]
    fn set_one_first_degree_counts() {
        let l = levels(1, 1, 1.0);
        let ground = count_moving_poles(&l[0], 1.0).unwrap();
        assert_eq!(ground.count, 0);
        assert!(ground.winding.abs() < 1e-9);
        let excited = count_moving_poles(&l[1], 1.0).unwrap();
        assert_eq!(excited.count, 1);
        assert!((excited.winding - 1.0).abs() < 1e-9);
        let root = -l[1].coefficients[0];
        assert!(root > 1.0 && root < excited.right_edge);
    }

    #[test]
    fn counts_agree_with_direct_roots() {
        for (set, n) in [(1, 4), (2, 3), (3, 5), (4, 5)] {
            for v1 in [0.3, 1.0, 6.0] {
                for level in levels(set, n, v1) {
                    let c = count_moving_poles(&level, v1.sqrt()).unwrap();
                    assert_eq!(c.count as usize, level.physical_roots().len());
                    assert!((c.winding - c.count as f64).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn root_on_the_contour_is_rejected() {
        let level = QesLevel {
            coefficients: vec![-1.0, 1.0],
            ..levels(1, 1, 1.0)[0].clone()
        };
        assert!(matches!(
            count_moving_poles(&level, 1.0),
            Err(Error::ContourCollision { .. })
        ));
    }

    #[test]
    fn boundary_distance() {
        let r = Rectangle { left: 1.0, right: 3.0, half_height: 0.5 };
        assert!((r.boundary_distance(Complex64::new(2.0, 0.0)) - 0.5).abs() < 1e-15);
        assert!((r.boundary_distance(Complex64::new(1.1, 0.0)) - 0.1).abs() < 1e-15);
        assert!((r.boundary_distance(Complex64::new(4.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((r.boundary_distance(Complex64::new(0.0, 0.0)) - 1.0).abs() < 1e-15);
    }
}
