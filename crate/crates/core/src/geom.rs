//! North-East plane vectors and angle helpers.
//!
//! Convention: `n` is north, `e` is east, and bearings are measured from north,
//! positive clockwise when viewed from above. A bearing of `+pi/2` points east.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{invalid, Error, Result};

/// 2D vector in the North-East inertial plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2NE {
    pub n: f64,
    pub e: f64,
}

impl Vec2NE {
    pub const ZERO: Vec2NE = Vec2NE { n: 0.0, e: 0.0 };

    pub const fn new(n: f64, e: f64) -> Self {
        Self { n, e }
    }

    /// Unit vector pointing along `bearing`.
    pub fn from_bearing(bearing: f64) -> Self {
        let (s, c) = bearing.sin_cos();
        Self { n: c, e: s }
    }

    pub fn dot(self, other: Vec2NE) -> f64 {
        dot(self, other)
    }

    pub fn cross_z(self, other: Vec2NE) -> f64 {
        cross_z(self, other)
    }

    pub fn norm(self) -> f64 {
        norm(self)
    }

    pub fn is_finite(self) -> bool {
        self.n.is_finite() && self.e.is_finite()
    }
}

impl Add for Vec2NE {
    type Output = Vec2NE;
    fn add(self, rhs: Vec2NE) -> Vec2NE {
        Vec2NE::new(self.n + rhs.n, self.e + rhs.e)
    }
}

impl AddAssign for Vec2NE {
    fn add_assign(&mut self, rhs: Vec2NE) {
        self.n += rhs.n;
        self.e += rhs.e;
    }
}

impl Sub for Vec2NE {
    type Output = Vec2NE;
    fn sub(self, rhs: Vec2NE) -> Vec2NE {
        Vec2NE::new(self.n - rhs.n, self.e - rhs.e)
    }
}

impl Mul<f64> for Vec2NE {
    type Output = Vec2NE;
    fn mul(self, k: f64) -> Vec2NE {
        Vec2NE::new(self.n * k, self.e * k)
    }
}

impl Mul<Vec2NE> for f64 {
    type Output = Vec2NE;
    fn mul(self, v: Vec2NE) -> Vec2NE {
        v * self
    }
}

impl Neg for Vec2NE {
    type Output = Vec2NE;
    fn neg(self) -> Vec2NE {
        Vec2NE::new(-self.n, -self.e)
    }
}

/// Wraps an angle into `(-pi, pi]`. Inputs congruent to `pi` map to `+pi`.
pub fn wrap_pi(a: f64) -> Result<f64> {
    if !a.is_finite() {
        return Err(invalid(format!("wrap_pi of non-finite angle {a}")));
    }
    Ok(wrap_pi_unchecked(a))
}

pub(crate) fn wrap_pi_unchecked(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

pub fn constrain(x: f64, lo: f64, hi: f64) -> Result<f64> {
    if lo > hi {
        return Err(invalid(format!("constrain bounds inverted: {lo} > {hi}")));
    }
    Ok(x.max(lo).min(hi))
}

/// Clamp for bounds that are known to be ordered.
pub(crate) fn clamp(x: f64, lo: f64, hi: f64) -> f64 {
    debug_assert!(lo <= hi);
    x.max(lo).min(hi)
}

/// Bearing of `v` in `(-pi, pi]`: north is 0, east is `+pi/2`.
pub fn bearing_of(v: Vec2NE) -> Result<f64> {
    if v.n == 0.0 && v.e == 0.0 {
        return Err(Error::DegenerateDirection("bearing of zero vector"));
    }
    Ok(v.e.atan2(v.n))
}

/// z-component of `a x b`; positive when `b` lies clockwise of `a`.
pub fn cross_z(a: Vec2NE, b: Vec2NE) -> f64 {
    a.n * b.e - a.e * b.n
}

pub fn dot(a: Vec2NE, b: Vec2NE) -> f64 {
    a.n * b.n + a.e * b.e
}

pub fn norm(v: Vec2NE) -> f64 {
    v.n.hypot(v.e)
}
