//! Scenario configuration files.
//!
//! INI-style sections of `key = value` pairs. Every key is optional; a file
//! is applied on top of a base scenario. Angles are in radians.
//!
//! ```ini
//! [scenario]
//! name = my-loiter
//! modes = original,prevention
//!
//! [loiter]
//! center_n = 0
//! center_e = 0
//! radius = 50
//! direction = 1
//!
//! [wind]
//! kind = sinusoidal
//! mean_n = 0
//! mean_e = 10
//! amplitude = 2
//! period = 30
//! direction_n = 0
//! direction_e = 1
//!
//! [guidance]      ; period damping roll_limit ground_speed_min center_eps gravity
//! [feasibility]   ; airspeed_buffer cutoff_angle wind_eps
//! [airspeed]      ; nominal max
//! [sim]           ; tau_airspeed tau_roll gravity dt t_end guidance_decimation
//! [initial]       ; n e airspeed heading roll (all five, or leave the section out)
//! ```

use std::path::Path;

use ini::Ini;
use loiter_guidance::{GuidanceMode, LoiterDirection, SimState, Vec2NE, WindModel};
use thiserror::Error;

use crate::scenario::ScenarioSpec;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("config syntax: {0}")]
    Syntax(String),
    #[error("unknown key `{key}` in section [{section}]")]
    UnknownKey { section: String, key: String },
    #[error("bad value for [{section}] {key}: `{value}`")]
    BadValue {
        section: String,
        key: String,
        value: String,
    },
    #[error("section [initial] needs all of n, e, airspeed, heading, roll")]
    PartialInitial,
    #[error(transparent)]
    Invalid(#[from] loiter_guidance::Error),
}

type Result<T> = std::result::Result<T, ConfigError>;

const SECTIONS: &[(&str, &[&str])] = &[
    ("scenario", &["name", "modes"]),
    ("loiter", &["center_n", "center_e", "radius", "direction"]),
    (
        "wind",
        &[
            "kind",
            "mean_n",
            "mean_e",
            "amplitude",
            "period",
            "direction_n",
            "direction_e",
        ],
    ),
    (
        "guidance",
        &[
            "period",
            "damping",
            "roll_limit",
            "ground_speed_min",
            "center_eps",
            "gravity",
        ],
    ),
    (
        "feasibility",
        &["airspeed_buffer", "cutoff_angle", "wind_eps"],
    ),
    ("airspeed", &["nominal", "max"]),
    (
        "sim",
        &[
            "tau_airspeed",
            "tau_roll",
            "gravity",
            "dt",
            "t_end",
            "guidance_decimation",
        ],
    ),
    ("initial", &["n", "e", "airspeed", "heading", "roll"]),
];

struct Section<'a> {
    name: &'static str,
    props: Option<&'a ini::Properties>,
}

impl Section<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.props.and_then(|p| p.get(key)).map(str::trim)
    }

    fn bad(&self, key: &str, value: &str) -> ConfigError {
        ConfigError::BadValue {
            section: self.name.into(),
            key: key.into(),
            value: value.into(),
        }
    }

    fn f64(&self, key: &str, slot: &mut f64) -> Result<()> {
        if let Some(v) = self.raw(key) {
            *slot = v.parse().map_err(|_| self.bad(key, v))?;
        }
        Ok(())
    }

    fn usize(&self, key: &str, slot: &mut usize) -> Result<()> {
        if let Some(v) = self.raw(key) {
            *slot = v.parse().map_err(|_| self.bad(key, v))?;
        }
        Ok(())
    }
}

/// Applies configuration text on top of `base`.
pub fn apply_str(text: &str, base: &ScenarioSpec) -> Result<ScenarioSpec> {
    let doc = Ini::load_from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
    for (section, props) in doc.iter() {
        let Some(name) = section else {
            if let Some((key, _)) = props.iter().next() {
                return Err(ConfigError::UnknownKey {
                    section: String::new(),
                    key: key.into(),
                });
            }
            continue;
        };
        let Some((_, keys)) = SECTIONS.iter().find(|(s, _)| *s == name) else {
            return Err(ConfigError::Syntax(format!("unknown section [{name}]")));
        };
        if let Some((key, _)) = props.iter().find(|(k, _)| !keys.contains(k)) {
            return Err(ConfigError::UnknownKey {
                section: name.into(),
                key: key.into(),
            });
        }
    }
    let sec = |name: &'static str| Section {
        name,
        props: doc.section(Some(name)),
    };
    let mut spec = base.clone();

    let s = sec("scenario");
    if let Some(v) = s.raw("name") {
        spec.name = v.to_string();
    }
    if let Some(v) = s.raw("modes") {
        spec.modes = v
            .split(',')
            .map(|m| {
                m.trim()
                    .parse::<GuidanceMode>()
                    .map_err(|_| s.bad("modes", v))
            })
            .collect::<Result<_>>()?;
    }

    let s = sec("loiter");
    s.f64("center_n", &mut spec.path.center.n)?;
    s.f64("center_e", &mut spec.path.center.e)?;
    s.f64("radius", &mut spec.path.radius)?;
    if let Some(v) = s.raw("direction") {
        let sign: i32 = v.parse().map_err(|_| s.bad("direction", v))?;
        spec.path.direction = LoiterDirection::from_sign(sign)?;
    }

    spec.wind = apply_wind(&sec("wind"), spec.wind)?;

    let s = sec("guidance");
    let g = &mut spec.config.guidance;
    s.f64("period", &mut g.period)?;
    s.f64("damping", &mut g.damping)?;
    s.f64("roll_limit", &mut g.roll_limit)?;
    s.f64("ground_speed_min", &mut g.ground_speed_min)?;
    s.f64("center_eps", &mut g.center_eps)?;
    s.f64("gravity", &mut g.gravity)?;

    let s = sec("feasibility");
    let f = &mut spec.config.feasibility;
    s.f64("airspeed_buffer", &mut f.airspeed_buffer)?;
    s.f64("cutoff_angle", &mut f.cutoff_angle)?;
    s.f64("wind_eps", &mut f.wind_eps)?;

    let s = sec("airspeed");
    s.f64("nominal", &mut spec.config.airspeed.nominal)?;
    s.f64("max", &mut spec.config.airspeed.max)?;

    let s = sec("sim");
    let p = &mut spec.sim;
    s.f64("tau_airspeed", &mut p.tau_airspeed)?;
    s.f64("tau_roll", &mut p.tau_roll)?;
    s.f64("gravity", &mut p.gravity)?;
    s.f64("dt", &mut p.dt)?;
    s.f64("t_end", &mut p.t_end)?;
    s.usize("guidance_decimation", &mut p.guidance_decimation)?;

    let s = sec("initial");
    if s.props.is_some_and(|p| !p.is_empty()) {
        let keys = ["n", "e", "airspeed", "heading", "roll"];
        if keys.iter().any(|k| s.raw(k).is_none()) {
            return Err(ConfigError::PartialInitial);
        }
        let mut st = SimState {
            n: 0.0,
            e: 0.0,
            airspeed: 0.0,
            heading: 0.0,
            roll: 0.0,
            t: 0.0,
        };
        s.f64("n", &mut st.n)?;
        s.f64("e", &mut st.e)?;
        s.f64("airspeed", &mut st.airspeed)?;
        s.f64("heading", &mut st.heading)?;
        s.f64("roll", &mut st.roll)?;
        spec.initial = Some(st);
    }

    spec.validate()?;
    Ok(spec)
}

fn apply_wind(s: &Section<'_>, base: WindModel) -> Result<WindModel> {
    let kind = match s.raw("kind") {
        None => match base {
            WindModel::Constant { .. } => "constant",
            WindModel::Sinusoidal { .. } => "sinusoidal",
        },
        Some(k @ ("constant" | "sinusoidal")) => k,
        Some(other) => return Err(s.bad("kind", other)),
    };
    let mut mean = base.mean();
    let (mut amplitude, mut period, mut direction) = match base {
        WindModel::Sinusoidal {
            amplitude,
            period,
            direction,
            ..
        } => (amplitude, period, direction),
        // a gust along the mean wind unless told otherwise
        WindModel::Constant { mean } if mean.norm() > 0.0 => {
            (0.0, 30.0, mean * (1.0 / mean.norm()))
        }
        WindModel::Constant { .. } => (0.0, 30.0, Vec2NE::new(1.0, 0.0)),
    };
    s.f64("mean_n", &mut mean.n)?;
    s.f64("mean_e", &mut mean.e)?;
    s.f64("amplitude", &mut amplitude)?;
    s.f64("period", &mut period)?;
    s.f64("direction_n", &mut direction.n)?;
    s.f64("direction_e", &mut direction.e)?;
    Ok(match kind {
        "constant" => WindModel::Constant { mean },
        _ => WindModel::Sinusoidal {
            mean,
            amplitude,
            period,
            direction,
        },
    })
}

pub fn load(path: &Path, base: &ScenarioSpec) -> Result<ScenarioSpec> {
    apply_str(&std::fs::read_to_string(path)?, base)
}

/// Full configuration text for `spec`; every key is written.
pub fn to_string(spec: &ScenarioSpec) -> String {
    let mut doc = Ini::new();
    let num = |x: f64| x.to_string();
    let modes: Vec<String> = spec.modes.iter().map(|m| m.to_string()).collect();
    doc.with_section(Some("scenario"))
        .set("name", spec.name.as_str())
        .set("modes", modes.join(","));
    doc.with_section(Some("loiter"))
        .set("center_n", num(spec.path.center.n))
        .set("center_e", num(spec.path.center.e))
        .set("radius", num(spec.path.radius))
        .set("direction", (spec.path.direction.sign() as i32).to_string());
    match spec.wind {
        WindModel::Constant { mean } => {
            doc.with_section(Some("wind"))
                .set("kind", "constant")
                .set("mean_n", num(mean.n))
                .set("mean_e", num(mean.e));
        }
        WindModel::Sinusoidal {
            mean,
            amplitude,
            period,
            direction,
        } => {
            doc.with_section(Some("wind"))
                .set("kind", "sinusoidal")
                .set("mean_n", num(mean.n))
                .set("mean_e", num(mean.e))
                .set("amplitude", num(amplitude))
                .set("period", num(period))
                .set("direction_n", num(direction.n))
                .set("direction_e", num(direction.e));
        }
    }
    let g = &spec.config.guidance;
    doc.with_section(Some("guidance"))
        .set("period", num(g.period))
        .set("damping", num(g.damping))
        .set("roll_limit", num(g.roll_limit))
        .set("ground_speed_min", num(g.ground_speed_min))
        .set("center_eps", num(g.center_eps))
        .set("gravity", num(g.gravity));
    let f = &spec.config.feasibility;
    doc.with_section(Some("feasibility"))
        .set("airspeed_buffer", num(f.airspeed_buffer))
        .set("cutoff_angle", num(f.cutoff_angle))
        .set("wind_eps", num(f.wind_eps));
    doc.with_section(Some("airspeed"))
        .set("nominal", num(spec.config.airspeed.nominal))
        .set("max", num(spec.config.airspeed.max));
    let p = &spec.sim;
    doc.with_section(Some("sim"))
        .set("tau_airspeed", num(p.tau_airspeed))
        .set("tau_roll", num(p.tau_roll))
        .set("gravity", num(p.gravity))
        .set("dt", num(p.dt))
        .set("t_end", num(p.t_end))
        .set("guidance_decimation", p.guidance_decimation.to_string());
    if let Some(st) = spec.initial {
        doc.with_section(Some("initial"))
            .set("n", num(st.n))
            .set("e", num(st.e))
            .set("airspeed", num(st.airspeed))
            .set("heading", num(st.heading))
            .set("roll", num(st.roll));
    }
    let mut out = Vec::new();
    doc.write_to(&mut out)
        .expect("writing to a Vec cannot fail");
    String::from_utf8(out).expect("ini output is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{builtin_catalog, find};

    #[test]
    fn round_trip_is_identity() {
        for spec in builtin_catalog() {
            let text = to_string(&spec);
            let parsed = apply_str(&text, &find("small-radius").unwrap()).unwrap();
            // the default start is materialised neither way
            assert_eq!(parsed, spec, "{text}");
            assert_eq!(to_string(&parsed), text);
        }
    }

    #[test]
    fn round_trip_with_initial_state() {
        let mut spec = find("sine-gust").unwrap();
        spec.initial = Some(SimState {
            n: -12.5,
            e: 3.25,
            airspeed: 10.0,
            heading: 0.1,
            roll: -0.05,
            t: 0.0,
        });
        spec.config.guidance.roll_limit = 0.1 + 0.2; // not exactly representable
        let parsed = apply_str(&to_string(&spec), &find("small-radius").unwrap()).unwrap();
        assert_eq!(parsed, spec);
    }

    #[test]
    fn partial_overrides() {
        let base = find("const-overwind").unwrap();
        let spec = apply_str("[loiter]\nradius = 80\n[sim]\nt_end = 30\n", &base).unwrap();
        assert_eq!(spec.path.radius, 80.0);
        assert_eq!(spec.sim.t_end, 30.0);
        assert_eq!(spec.wind, base.wind);

        let gust = apply_str("[wind]\nkind = sinusoidal\namplitude = 1.5\n", &base).unwrap();
        match gust.wind {
            WindModel::Sinusoidal {
                mean,
                amplitude,
                direction,
                ..
            } => {
                assert_eq!(mean, Vec2NE::new(0.0, 12.0));
                assert_eq!(amplitude, 1.5);
                assert_eq!(direction, Vec2NE::new(0.0, 1.0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        let base = find("small-radius").unwrap();
        assert!(matches!(
            apply_str("[loiter]\nradus = 3\n", &base),
            Err(ConfigError::UnknownKey { .. })
        ));
        assert!(matches!(
            apply_str("[bogus]\nx = 1\n", &base),
            Err(ConfigError::Syntax(_))
        ));
        assert!(matches!(
            apply_str("[loiter]\nradius = abc\n", &base),
            Err(ConfigError::BadValue { .. })
        ));
        assert!(matches!(
            apply_str("[loiter]\nradius = -3\n", &base),
            Err(ConfigError::Invalid(_))
        ));
        assert!(matches!(
            apply_str("[loiter]\ndirection = 0\n", &base),
            Err(ConfigError::Invalid(_))
        ));
        assert!(matches!(
            apply_str("[scenario]\nmodes = fast\n", &base),
            Err(ConfigError::BadValue { .. })
        ));
        assert!(matches!(
            apply_str("[initial]\nn = 3\n", &base),
            Err(ConfigError::PartialInitial)
        ));
        assert!(matches!(
            apply_str("[wind]\nkind = gusty\n", &base),
            Err(ConfigError::BadValue { .. })
        ));
        assert!(matches!(
            apply_str("[airspeed]\nnominal = 14\n", &base),
            Err(ConfigError::Invalid(_))
        ));
    }
}
