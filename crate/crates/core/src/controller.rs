//! One guidance evaluation: baseline L1 loiter guidance with optional radius
//! adaptation, feasibility blending and airspeed compensation.
//!
//! Stage order is fixed: the L1 length (and its adaptation) is settled
//! first, since the look-ahead vector it produces defines the wind-bearing
//! angle used by the feasibility blend.

use std::fmt;
use std::str::FromStr;

use crate::adapt::adapt_l1;
use crate::airspeed::{airspeed_ref, AirspeedPolicy};
use crate::error::{invalid, Error, Result};
use crate::feasibility::{
    buffer_ratio, nav_velocity, sigma_feas, wind_bearing_angle, wind_ratio, FeasibilityEval,
    FeasibilityParams,
};
use crate::geom::{bearing_of, norm, Vec2NE};
use crate::l1::{
    accel_ref, error_angle, l1_ratio_and_gain, loiter_geometry, roll_ref, GuidanceParams,
    L1Geometry, L1Scale, LoiterPath,
};

/// Which extensions are active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GuidanceMode {
    pub adapt_radius: bool,
    /// Run-away mitigation.
    pub feasibility_blend: bool,
    /// Run-away prevention; requires `feasibility_blend`.
    pub airspeed_compensation: bool,
}

impl GuidanceMode {
    pub const ORIGINAL: GuidanceMode = GuidanceMode {
        adapt_radius: false,
        feasibility_blend: false,
        airspeed_compensation: false,
    };
    pub const ADAPTIVE: GuidanceMode = GuidanceMode {
        adapt_radius: true,
        feasibility_blend: false,
        airspeed_compensation: false,
    };
    pub const MITIGATION: GuidanceMode = GuidanceMode {
        adapt_radius: true,
        feasibility_blend: true,
        airspeed_compensation: false,
    };
    pub const PREVENTION: GuidanceMode = GuidanceMode {
        adapt_radius: true,
        feasibility_blend: true,
        airspeed_compensation: true,
    };

    pub const NAMED: [(&'static str, GuidanceMode); 4] = [
        ("original", GuidanceMode::ORIGINAL),
        ("adaptive", GuidanceMode::ADAPTIVE),
        ("mitigation", GuidanceMode::MITIGATION),
        ("prevention", GuidanceMode::PREVENTION),
    ];

    pub fn validate(&self) -> Result<()> {
        if self.airspeed_compensation && !self.feasibility_blend {
            return Err(invalid(
                "airspeed compensation requires feasibility blending",
            ));
        }
        Ok(())
    }

    /// Catalog name, if this is one of the four named configurations.
    pub fn name(&self) -> Option<&'static str> {
        Self::NAMED.iter().find(|(_, m)| m == self).map(|(n, _)| *n)
    }
}

impl fmt::Display for GuidanceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(name) => f.write_str(name),
            None => write!(
                f,
                "custom(adapt={}, blend={}, airspeed={})",
                self.adapt_radius, self.feasibility_blend, self.airspeed_compensation
            ),
        }
    }
}

impl FromStr for GuidanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::NAMED
            .iter()
            .find(|(n, _)| *n == s)
            .map(|(_, m)| *m)
            .ok_or_else(|| invalid(format!("unknown guidance mode `{s}`")))
    }
}

/// Parameter records used by every guidance evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GuidanceConfig {
    pub guidance: GuidanceParams,
    pub feasibility: FeasibilityParams,
    pub airspeed: AirspeedPolicy,
}

impl GuidanceConfig {
    pub fn validate(&self) -> Result<()> {
        self.guidance.validate()?;
        self.feasibility.validate()?;
        self.airspeed.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuidanceInput {
    pub position: Vec2NE,
    pub ground_velocity: Vec2NE,
    pub wind: Vec2NE,
    pub path: LoiterPath,
}

impl GuidanceInput {
    pub fn air_velocity(&self) -> Vec2NE {
        self.ground_velocity - self.wind
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuidanceOutput {
    /// Lateral acceleration reference (m/s^2).
    pub accel_ref: f64,
    /// Roll reference (rad), within the roll limit.
    pub roll_ref: f64,
    /// Error angle (rad), within `[-pi/2, pi/2]`.
    pub eta: f64,
    pub geometry: L1Geometry,
    /// L1 period implied by the ratio actually used (s).
    pub effective_period: f64,
    /// Feasibility used for blending; one when blending is off.
    pub sigma: f64,
    /// Wind ratio.
    pub beta: f64,
    /// Wind-bearing angle (rad).
    pub lambda: f64,
    /// Full feasibility record when blending is on.
    pub feasibility: Option<FeasibilityEval>,
    /// Airspeed reference (m/s).
    pub airspeed_ref: f64,
    /// Ground course (rad); air-relative heading when ground speed is below the floor.
    pub course: f64,
    /// Course that the error angle is measured from (rad).
    pub chi_nav: f64,
    /// Speed used in the acceleration law (m/s).
    pub nav_speed: f64,
}

fn finite(x: f64, stage: &'static str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::GuidanceFault { stage })
    }
}

pub fn guidance_step(
    input: &GuidanceInput,
    config: &GuidanceConfig,
    mode: GuidanceMode,
) -> Result<GuidanceOutput> {
    let params = &config.guidance;
    let air = input.air_velocity();
    if !(input.position.is_finite() && input.ground_velocity.is_finite() && input.wind.is_finite())
    {
        return Err(Error::GuidanceFault { stage: "input" });
    }
    let ground_speed = norm(input.ground_velocity);
    let speed = ground_speed.max(params.ground_speed_min);

    let (ratio_nominal, gain) = l1_ratio_and_gain(params);
    let offset = input.path.center_offset(input.position, params.center_eps);
    let (length, ratio) = if mode.adapt_radius {
        let cross_track = norm(offset) - input.path.radius;
        adapt_l1(ratio_nominal, speed, input.path.radius, cross_track)?
    } else {
        (ratio_nominal * speed, ratio_nominal)
    };
    finite(length, "l1 length")?;
    let geometry = loiter_geometry(
        offset,
        &input.path,
        L1Scale {
            ratio,
            gain,
            length,
        },
    )?;
    finite(geometry.chi_l1, "l1 bearing")?;

    let course = if ground_speed >= params.ground_speed_min {
        bearing_of(input.ground_velocity)?
    } else {
        bearing_of(air)?
    };

    let wind_speed = norm(input.wind);
    let airspeed = norm(air);
    let lambda = wind_bearing_angle(input.wind, geometry.l1_vector(), &config.feasibility)?;
    let beta = wind_ratio(wind_speed, airspeed);

    let (sigma, feasibility, chi_nav, nav_speed) = if mode.feasibility_blend {
        let beta_buf = buffer_ratio(&config.feasibility, airspeed);
        let eval = sigma_feas(beta, lambda, beta_buf, &config.feasibility)?;
        finite(eval.sigma, "feasibility")?;
        let nav = nav_velocity(input.ground_velocity, air, eval.sigma)?;
        (
            eval.sigma,
            Some(eval),
            nav.course,
            nav.speed.max(params.ground_speed_min),
        )
    } else {
        (1.0, None, course, speed)
    };

    let eta = error_angle(geometry.chi_l1, chi_nav);
    let accel = finite(accel_ref(gain, nav_speed, ratio, eta), "acceleration")?;
    let roll = roll_ref(accel, params);
    let airspeed_ref = if mode.airspeed_compensation {
        airspeed_ref(wind_speed, sigma, &config.airspeed)
    } else {
        config.airspeed.nominal
    };

    Ok(GuidanceOutput {
        accel_ref: accel,
        roll_ref: roll,
        eta,
        geometry,
        effective_period: params.effective_period(ratio),
        sigma,
        beta,
        lambda,
        feasibility,
        airspeed_ref,
        course,
        chi_nav,
        nav_speed,
    })
}
