//! Built-in scenario catalog.
//!
//! Four studies: a 15 m loiter in calm air, the same loiter in a 3 m/s
//! easterly, a constant 12 m/s easterly over-wind, and a 10 m/s easterly
//! with a 2 m/s, 30 s sinusoidal gust. Guidance tuning is the same
//! throughout (period 25 s, damping 0.707, roll limit 35 deg, airspeed
//! 9/12 m/s, buffer 1 m/s).

use loiter_guidance::{
    GuidanceConfig, GuidanceMode, LoiterDirection, LoiterPath, Result, RunSetup, SimParams,
    SimState, Vec2NE, WindModel,
};

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub name: String,
    pub path: LoiterPath,
    pub wind: WindModel,
    /// Modes run when none is requested explicitly.
    pub modes: Vec<GuidanceMode>,
    pub config: GuidanceConfig,
    pub sim: SimParams,
    /// `None` uses [`SimState::default_start`].
    pub initial: Option<SimState>,
}

impl ScenarioSpec {
    fn new(name: &str, radius: f64, wind: WindModel, modes: &[GuidanceMode]) -> Self {
        Self {
            name: name.to_string(),
            path: LoiterPath {
                center: Vec2NE::ZERO,
                radius,
                direction: LoiterDirection::Clockwise,
            },
            wind,
            modes: modes.to_vec(),
            config: GuidanceConfig::default(),
            sim: SimParams::default(),
            initial: None,
        }
    }

    pub fn initial_state(&self) -> SimState {
        self.initial
            .unwrap_or_else(|| SimState::default_start(&self.path, self.config.airspeed.nominal))
    }

    pub fn setup(&self, mode: GuidanceMode) -> RunSetup {
        RunSetup {
            path: self.path,
            mode,
            config: self.config,
            wind: self.wind,
            sim: self.sim,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(loiter_guidance::Error::InvalidArgument(
                "scenario name is empty".into(),
            ));
        }
        for mode in &self.modes {
            self.setup(*mode).validate()?;
        }
        self.initial_state().validate()
    }
}

fn east(speed: f64) -> Vec2NE {
    Vec2NE::new(0.0, speed)
}

pub fn builtin_catalog() -> Vec<ScenarioSpec> {
    use GuidanceMode as M;
    let high_wind = [M::ORIGINAL, M::MITIGATION, M::PREVENTION];
    vec![
        ScenarioSpec::new(
            "small-radius",
            15.0,
            WindModel::calm(),
            &[M::ORIGINAL, M::ADAPTIVE],
        ),
        ScenarioSpec::new(
            "small-radius-wind",
            15.0,
            WindModel::Constant { mean: east(3.0) },
            &[M::ORIGINAL, M::ADAPTIVE],
        ),
        ScenarioSpec::new(
            "const-overwind",
            50.0,
            WindModel::Constant { mean: east(12.0) },
            &high_wind,
        ),
        ScenarioSpec::new(
            "sine-gust",
            50.0,
            WindModel::Sinusoidal {
                mean: east(10.0),
                amplitude: 2.0,
                period: 30.0,
                direction: east(1.0),
            },
            &high_wind,
        ),
    ]
}

pub fn find(name: &str) -> Option<ScenarioSpec> {
    builtin_catalog().into_iter().find(|s| s.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use loiter_guidance::sim::wind_at;

    #[test]
    fn four_unique_valid_scenarios() {
        let cat = builtin_catalog();
        assert_eq!(cat.len(), 4);
        let mut names: Vec<_> = cat.iter().map(|s| s.name.clone()).collect();
        names.dedup();
        assert_eq!(names.len(), 4);
        for s in &cat {
            s.validate().unwrap();
        }
    }

    #[test]
    fn overwind_ratio_at_nominal_airspeed() {
        let s = find("const-overwind").unwrap();
        let w = s.wind.mean().norm();
        assert_eq!(w, 12.0);
        assert_abs_diff_eq!(w / s.config.airspeed.nominal, 4.0 / 3.0);
    }

    #[test]
    fn gust_range_straddles_nominal_airspeed() {
        let s = find("sine-gust").unwrap();
        let (lo, hi) = (0..3000)
            .map(|k| wind_at(&s.wind, k as f64 * 0.01).norm())
            .fold((f64::MAX, 0.0f64), |(lo, hi), w| (lo.min(w), hi.max(w)));
        assert_abs_diff_eq!(lo, 8.0, epsilon = 1e-6);
        assert_abs_diff_eq!(hi, 12.0, epsilon = 1e-6);
        assert!(lo < s.config.airspeed.nominal && hi > s.config.airspeed.nominal);
    }

    #[test]
    fn default_start_positions() {
        let s = find("small-radius").unwrap().initial_state();
        assert_eq!((s.n, s.e, s.heading, s.airspeed), (-30.0, 0.0, 0.0, 9.0));
        let s = find("const-overwind").unwrap().initial_state();
        assert_eq!(s.n, -100.0);
    }
}
