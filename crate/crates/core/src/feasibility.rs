//! Bearing feasibility in wind.
//!
//! When the wind ratio `beta = w / v_A` exceeds one, only bearings inside a
//! cone around the downwind direction can be flown. `sigma_feas` is a smooth
//! indicator in `[0, 1]`: one where the L1 bearing is comfortably feasible,
//! zero where it is not, with a `cos^2` transition whose lower edge is pulled
//! below `beta = 1` by a buffer airspeed. Guidance blends ground velocity
//! (tracking) and air velocity (safety) with it.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{invalid, Error, Result};
use crate::geom::{bearing_of, clamp, cross_z, dot, norm, Vec2NE};

/// Airspeed floor used when forming wind and buffer ratios (m/s).
pub const RATIO_AIRSPEED_FLOOR: f64 = 0.1;

/// Below this blended speed the navigation vector falls back to air velocity (m/s).
const NAV_SPEED_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityParams {
    /// Buffer airspeed (m/s); widens the transition below `beta = 1`.
    pub airspeed_buffer: f64,
    /// Angle below which the upper bound switches to a linear cut-off (rad).
    pub cutoff_angle: f64,
    /// Wind speeds below this are treated as calm (m/s).
    pub wind_eps: f64,
}

impl Default for FeasibilityParams {
    fn default() -> Self {
        Self {
            airspeed_buffer: 1.0,
            cutoff_angle: 15f64.to_radians(),
            wind_eps: 0.01,
        }
    }
}

impl FeasibilityParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.airspeed_buffer.is_finite() && self.airspeed_buffer >= 0.0) {
            return Err(invalid("buffer airspeed must be >= 0"));
        }
        if !(self.cutoff_angle > 0.0 && self.cutoff_angle < FRAC_PI_2) {
            return Err(invalid("cut-off angle must lie in (0, pi/2)"));
        }
        if !(self.wind_eps.is_finite() && self.wind_eps > 0.0) {
            return Err(invalid("wind magnitude floor must be > 0"));
        }
        Ok(())
    }
}

/// Full record of one feasibility evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityEval {
    pub beta: f64,
    pub beta_buf: f64,
    pub lambda: f64,
    pub beta_plus: f64,
    pub beta_minus: f64,
    pub sigma: f64,
}

/// `w / max(v_A, floor)`.
pub fn wind_ratio(wind_speed: f64, airspeed: f64) -> f64 {
    wind_speed / airspeed.max(RATIO_AIRSPEED_FLOOR)
}

/// `v_A_buf / max(v_A, floor)`.
pub fn buffer_ratio(params: &FeasibilityParams, airspeed: f64) -> f64 {
    params.airspeed_buffer / airspeed.max(RATIO_AIRSPEED_FLOOR)
}

/// Signed angle from the wind vector to the look-ahead vector, in `[-pi, pi]`.
/// Zero in calm air.
pub fn wind_bearing_angle(wind: Vec2NE, l1: Vec2NE, params: &FeasibilityParams) -> Result<f64> {
    if l1.n == 0.0 && l1.e == 0.0 {
        return Err(Error::DegenerateDirection("look-ahead vector is zero"));
    }
    if norm(wind) < params.wind_eps {
        return Ok(0.0);
    }
    Ok(cross_z(wind, l1).atan2(dot(wind, l1)))
}

/// Binary feasibility boundary. The angle enters through `|lambda|` so the
/// classification is mirror-symmetric about the wind axis.
pub fn binary_feasibility(beta: f64, lambda: f64) -> bool {
    let lam = clamp(lambda.abs(), 0.0, PI);
    !(beta * lam.sin() >= 1.0 && lam >= FRAC_PI_2)
}

/// The original continuous transition `sqrt(1 - (beta sin lambda)^2) / cos lambda`,
/// kept for comparison plots.
///
/// Below unit wind ratio every bearing is feasible and the result is one.
/// Outside the cone (`beta sin|lambda| >= 1`, or the upwind half-plane at
/// `beta >= 1`) the result is zero.
pub fn sigma_legacy(beta: f64, lambda: f64) -> f64 {
    if beta < 1.0 {
        return 1.0;
    }
    let lam = lambda.abs().min(PI);
    let s = beta * lam.sin();
    let c = lam.cos();
    if lam >= FRAC_PI_2 || s >= 1.0 {
        return 0.0;
    }
    if c.abs() < 1e-9 {
        return if binary_feasibility(beta, lambda) {
            1.0
        } else {
            0.0
        };
    }
    clamp((1.0 - s * s).sqrt() / c, 0.0, 1.0)
}

/// Upper and lower wind-ratio bounds of the transition region at `lambda`.
pub fn beta_bounds(lambda: f64, beta_buf: f64, params: &FeasibilityParams) -> (f64, f64) {
    let lam = clamp(lambda.abs(), 0.0, FRAC_PI_2);
    let co = params.cutoff_angle;
    if lam < co {
        let (s_co, c_co) = co.sin_cos();
        let slope = c_co / (s_co * s_co);
        let plus_co = 1.0 / s_co;
        let minus_co = (1.0 / s_co - 2.0) * beta_buf + 1.0;
        let delta = co - lam;
        (plus_co + slope * delta, minus_co + beta_buf * slope * delta)
    } else {
        let inv = 1.0 / lam.sin();
        (inv, (inv - 2.0) * beta_buf + 1.0)
    }
}

/// Buffered smooth feasibility.
///
/// A zero-width transition (no buffer, crosswind bearing) degrades to a step
/// at `beta_plus`.
pub fn sigma_feas(
    beta: f64,
    lambda: f64,
    beta_buf: f64,
    params: &FeasibilityParams,
) -> Result<FeasibilityEval> {
    let (beta_plus, beta_minus) = beta_bounds(lambda, beta_buf, params);
    if beta_plus < beta_minus {
        return Err(Error::InvertedTransition {
            beta_plus,
            beta_minus,
        });
    }
    let sigma = if beta > beta_plus {
        0.0
    } else if beta > beta_minus {
        let x = clamp((beta - beta_minus) / (beta_plus - beta_minus), 0.0, 1.0);
        let c = (FRAC_PI_2 * x).cos();
        c * c
    } else {
        1.0
    };
    Ok(FeasibilityEval {
        beta,
        beta_buf,
        lambda,
        beta_plus,
        beta_minus,
        sigma,
    })
}

/// Navigation velocity blended between ground (tracking) and air (safety) velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NavVelocity {
    pub velocity: Vec2NE,
    pub course: f64,
    pub speed: f64,
}

pub fn nav_velocity(ground: Vec2NE, air: Vec2NE, sigma: f64) -> Result<NavVelocity> {
    if !(0.0..=1.0).contains(&sigma) {
        return Err(invalid(format!("feasibility {sigma} outside [0, 1]")));
    }
    let mut velocity = if sigma == 1.0 {
        ground
    } else if sigma == 0.0 {
        air
    } else {
        ground * sigma + air * (1.0 - sigma)
    };
    if norm(velocity) < NAV_SPEED_FLOOR {
        velocity = air;
    }
    let course = bearing_of(velocity)?;
    Ok(NavVelocity {
        velocity,
        course,
        speed: norm(velocity),
    })
}
