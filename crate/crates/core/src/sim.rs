//! Planar point-mass fixed-wing model with first-order airspeed and roll
//! response, integrated with classical RK4.
//!
//! State: north, east, airspeed, heading, roll. Heading is the direction of
//! the air-relative velocity. Guidance runs once per `guidance_decimation`
//! integration steps and its commands are held over the steps in between;
//! the wind is sampled at every RK4 stage.

use std::f64::consts::TAU;

use crate::controller::{
    guidance_step, GuidanceConfig, GuidanceInput, GuidanceMode, GuidanceOutput,
};
use crate::error::{invalid, Error, Result};
use crate::geom::{wrap_pi_unchecked, Vec2NE};
use crate::l1::LoiterPath;

/// Airspeed at or below which the turn-rate equation is undefined (m/s).
pub const MIN_MODEL_AIRSPEED: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimState {
    pub n: f64,
    pub e: f64,
    pub airspeed: f64,
    /// Heading (rad). Not wrapped during integration.
    pub heading: f64,
    pub roll: f64,
    pub t: f64,
}

impl SimState {
    pub fn position(&self) -> Vec2NE {
        Vec2NE::new(self.n, self.e)
    }

    pub fn air_velocity(&self) -> Vec2NE {
        Vec2NE::from_bearing(self.heading) * self.airspeed
    }

    pub fn ground_velocity(&self, wind: Vec2NE) -> Vec2NE {
        self.air_velocity() + wind
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.n,
            self.e,
            self.airspeed,
            self.heading,
            self.roll,
            self.t,
        ]
        .iter()
        .all(|x| x.is_finite());
        if !finite {
            return Err(invalid("initial state must be finite"));
        }
        if self.airspeed <= MIN_MODEL_AIRSPEED {
            return Err(invalid(format!(
                "initial airspeed must exceed {MIN_MODEL_AIRSPEED} m/s"
            )));
        }
        Ok(())
    }

    /// Default start for a loiter: straight and level, heading north, 100 m
    /// south of the center (twice the radius for radii below 50 m).
    pub fn default_start(path: &LoiterPath, airspeed: f64) -> Self {
        let offset = if path.radius < 50.0 {
            2.0 * path.radius
        } else {
            100.0
        };
        Self {
            n: path.center.n - offset,
            e: path.center.e,
            airspeed,
            heading: 0.0,
            roll: 0.0,
            t: 0.0,
        }
    }

    fn axpy(&self, k: f64, d: &Derivatives) -> SimState {
        SimState {
            n: self.n + k * d.n,
            e: self.e + k * d.e,
            airspeed: self.airspeed + k * d.airspeed,
            heading: self.heading + k * d.heading,
            roll: self.roll + k * d.roll,
            t: self.t + k,
        }
    }
}

/// Time derivative of the five dynamic states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivatives {
    pub n: f64,
    pub e: f64,
    pub airspeed: f64,
    pub heading: f64,
    pub roll: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimParams {
    /// Airspeed time constant (s).
    pub tau_airspeed: f64,
    /// Roll time constant (s).
    pub tau_roll: f64,
    pub gravity: f64,
    pub dt: f64,
    pub t_end: f64,
    /// Integration steps per guidance update.
    pub guidance_decimation: usize,
}

impl Default for SimParams {
    fn default() -> Self {
        Self {
            tau_airspeed: 1.0,
            tau_roll: 0.5,
            gravity: 9.81,
            dt: 0.01,
            t_end: 120.0,
            guidance_decimation: 1,
        }
    }
}

impl SimParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau_airspeed > 0.0
            && self.tau_roll > 0.0
            && self.tau_airspeed.is_finite()
            && self.tau_roll.is_finite())
        {
            return Err(invalid("time constants must be > 0"));
        }
        if !(self.gravity.is_finite() && self.gravity > 0.0) {
            return Err(invalid("gravity must be > 0"));
        }
        if !(self.dt > 0.0 && self.dt <= 0.1) {
            return Err(invalid(format!("dt must lie in (0, 0.1], got {}", self.dt)));
        }
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return Err(invalid("t_end must be > 0"));
        }
        if self.guidance_decimation == 0 {
            return Err(invalid("guidance decimation must be >= 1"));
        }
        Ok(())
    }

    /// Number of integration steps; the trajectory holds one more record.
    pub fn steps(&self) -> usize {
        (self.t_end / self.dt + 1e-9).floor() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindModel {
    Constant {
        mean: Vec2NE,
    },
    /// `mean + direction * amplitude * sin(2 pi t / period)`.
    Sinusoidal {
        mean: Vec2NE,
        amplitude: f64,
        period: f64,
        direction: Vec2NE,
    },
}

impl WindModel {
    pub fn calm() -> Self {
        WindModel::Constant { mean: Vec2NE::ZERO }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            WindModel::Constant { mean } if mean.is_finite() => Ok(()),
            WindModel::Constant { .. } => Err(invalid("wind must be finite")),
            WindModel::Sinusoidal {
                mean,
                amplitude,
                period,
                direction,
            } => {
                if !(mean.is_finite() && direction.is_finite()) {
                    return Err(invalid("wind must be finite"));
                }
                if !(period.is_finite() && period > 0.0) {
                    return Err(invalid("gust period must be > 0"));
                }
                if !(amplitude.is_finite() && amplitude >= 0.0) {
                    return Err(invalid("gust amplitude must be >= 0"));
                }
                if (direction.norm() - 1.0).abs() > 1e-9 {
                    return Err(invalid("gust direction must be a unit vector"));
                }
                Ok(())
            }
        }
    }

    pub fn mean(&self) -> Vec2NE {
        match *self {
            WindModel::Constant { mean } | WindModel::Sinusoidal { mean, .. } => mean,
        }
    }
}

pub fn wind_at(model: &WindModel, t: f64) -> Vec2NE {
    match *model {
        WindModel::Constant { mean } => mean,
        WindModel::Sinusoidal {
            mean,
            amplitude,
            period,
            direction,
        } => mean + direction * (amplitude * (TAU * t / period).sin()),
    }
}

/// Commands held over an integration step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Controls {
    pub roll_ref: f64,
    pub airspeed_ref: f64,
}

pub fn derivatives(
    s: &SimState,
    controls: Controls,
    wind: Vec2NE,
    p: &SimParams,
) -> Result<Derivatives> {
    if s.airspeed.is_nan() || s.airspeed <= MIN_MODEL_AIRSPEED {
        return Err(Error::SimulationFault {
            step: 0,
            reason: format!("airspeed {} m/s below model floor", s.airspeed),
        });
    }
    let (sin_h, cos_h) = s.heading.sin_cos();
    Ok(Derivatives {
        n: s.airspeed * cos_h + wind.n,
        e: s.airspeed * sin_h + wind.e,
        airspeed: (controls.airspeed_ref - s.airspeed) / p.tau_airspeed,
        heading: p.gravity * s.roll.tan() / s.airspeed,
        roll: (controls.roll_ref - s.roll) / p.tau_roll,
    })
}

/// One RK4 step of size `p.dt` with zero-order-held controls.
pub fn step_rk4(
    s: &SimState,
    controls: Controls,
    wind: &WindModel,
    p: &SimParams,
) -> Result<SimState> {
    let h = p.dt;
    let k1 = derivatives(s, controls, wind_at(wind, s.t), p)?;
    let s2 = s.axpy(0.5 * h, &k1);
    let k2 = derivatives(&s2, controls, wind_at(wind, s2.t), p)?;
    let s3 = s.axpy(0.5 * h, &k2);
    let k3 = derivatives(&s3, controls, wind_at(wind, s3.t), p)?;
    let s4 = s.axpy(h, &k3);
    let k4 = derivatives(&s4, controls, wind_at(wind, s4.t), p)?;
    let blend = |a: f64, b: f64, c: f64, d: f64| (a + 2.0 * b + 2.0 * c + d) * (h / 6.0);
    Ok(SimState {
        n: s.n + blend(k1.n, k2.n, k3.n, k4.n),
        e: s.e + blend(k1.e, k2.e, k3.e, k4.e),
        airspeed: s.airspeed + blend(k1.airspeed, k2.airspeed, k3.airspeed, k4.airspeed),
        heading: s.heading + blend(k1.heading, k2.heading, k3.heading, k4.heading),
        roll: s.roll + blend(k1.roll, k2.roll, k3.roll, k4.roll),
        t: s.t + h,
    })
}

/// One logged sample: state at `state.t`, the wind there, and the guidance
/// output in force from `state.t` on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Record {
    pub state: SimState,
    pub wind: Vec2NE,
    pub ground_velocity: Vec2NE,
    pub guidance: GuidanceOutput,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub records: Vec<Record>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn last(&self) -> Option<&Record> {
        self.records.last()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Record> {
        self.records.iter()
    }
}

/// Everything a run needs besides the initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSetup {
    pub path: LoiterPath,
    pub mode: GuidanceMode,
    pub config: GuidanceConfig,
    pub wind: WindModel,
    pub sim: SimParams,
}

impl RunSetup {
    pub fn validate(&self) -> Result<()> {
        self.path.validate()?;
        self.mode.validate()?;
        self.config.validate()?;
        self.wind.validate()?;
        self.sim.validate()
    }
}

fn at_step(step: usize, err: Error) -> Error {
    match err {
        Error::SimulationFault { reason, .. } => Error::SimulationFault { step, reason },
        other => Error::SimulationFault {
            step,
            reason: other.to_string(),
        },
    }
}

/// Closed-loop simulation from `init` to `setup.sim.t_end`.
pub fn run_scenario(init: SimState, setup: &RunSetup) -> Result<Trajectory> {
    setup.validate()?;
    init.validate()?;
    let p = &setup.sim;
    let steps = p.steps();
    let mut records = Vec::with_capacity(steps + 1);
    let mut state = init;
    let mut held: Option<GuidanceOutput> = None;

    for k in 0..=steps {
        // uniform time base, free of accumulated round-off
        state.t = init.t + k as f64 * p.dt;
        let wind = wind_at(&setup.wind, state.t);
        let ground_velocity = state.ground_velocity(wind);
        let guidance = match held {
            Some(g) if k % p.guidance_decimation != 0 => g,
            _ => {
                let input = GuidanceInput {
                    position: state.position(),
                    ground_velocity,
                    wind,
                    path: setup.path,
                };
                guidance_step(&input, &setup.config, setup.mode).map_err(|e| at_step(k, e))?
            }
        };
        held = Some(guidance);
        let mut logged = state;
        logged.heading = wrap_pi_unchecked(state.heading);
        records.push(Record {
            state: logged,
            wind,
            ground_velocity,
            guidance,
        });
        if k == steps {
            break;
        }
        let controls = Controls {
            roll_ref: guidance.roll_ref,
            airspeed_ref: guidance.airspeed_ref,
        };
        state = step_rk4(&state, controls, &setup.wind, p).map_err(|e| at_step(k, e))?;
        let finite = [state.n, state.e, state.airspeed, state.heading, state.roll]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::SimulationFault {
                step: k,
                reason: "non-finite state".into(),
            });
        }
    }
    Ok(Trajectory { records })
}
