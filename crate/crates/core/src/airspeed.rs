//! Airspeed reference compensation for over-wind run-away prevention.

use crate::error::{invalid, Result};
use crate::geom::clamp;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AirspeedPolicy {
    /// Nominal airspeed reference (m/s).
    pub nominal: f64,
    /// Maximum airspeed reference (m/s).
    pub max: f64,
}

impl Default for AirspeedPolicy {
    fn default() -> Self {
        Self {
            nominal: 9.0,
            max: 12.0,
        }
    }
}

impl AirspeedPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.nominal > 0.0 && self.nominal <= self.max && self.max.is_finite()) {
            return Err(invalid(format!(
                "airspeed policy requires 0 < nominal <= max, got {} / {}",
                self.nominal, self.max
            )));
        }
        Ok(())
    }

    pub fn max_increment(&self) -> f64 {
        self.max - self.nominal
    }
}

/// Airspeed reference raised by the wind excess over nominal, scaled by infeasibility.
pub fn airspeed_ref(wind_speed: f64, sigma: f64, policy: &AirspeedPolicy) -> f64 {
    let excess = clamp(wind_speed - policy.nominal, 0.0, policy.max_increment());
    policy.nominal + excess * (1.0 - sigma)
}
