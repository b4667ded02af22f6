use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use loiter_guidance::sim::{derivatives, Controls};
use loiter_guidance::{
    run_scenario, Error, GuidanceConfig, GuidanceMode, LoiterDirection, LoiterPath, RunSetup,
    SimParams, SimState, Vec2NE, WindModel,
};

fn setup(radius: f64, wind: WindModel, mode: GuidanceMode, t_end: f64) -> RunSetup {
    RunSetup {
        path: LoiterPath::new(Vec2NE::ZERO, radius, LoiterDirection::Clockwise).unwrap(),
        mode,
        config: GuidanceConfig::default(),
        wind,
        sim: SimParams {
            t_end,
            ..SimParams::default()
        },
    }
}

fn east(speed: f64) -> Vec2NE {
    Vec2NE::new(0.0, speed)
}

#[test]
fn record_count_and_time_grid() {
    let s = setup(50.0, WindModel::calm(), GuidanceMode::ORIGINAL, 1.0);
    let traj = run_scenario(SimState::default_start(&s.path, 9.0), &s).unwrap();
    assert_eq!(traj.len(), 101);
    assert_eq!(traj.records[0].state.t, 0.0);
    assert_abs_diff_eq!(traj.last().unwrap().state.t, 1.0, epsilon = 1e-12);
    for (k, r) in traj.iter().enumerate() {
        assert_abs_diff_eq!(r.state.t, k as f64 * 0.01, epsilon = 1e-12);
    }
}

#[test]
fn reruns_are_bit_identical() {
    let gust = WindModel::Sinusoidal {
        mean: east(10.0),
        amplitude: 2.0,
        period: 30.0,
        direction: east(1.0),
    };
    for mode in [
        GuidanceMode::ORIGINAL,
        GuidanceMode::MITIGATION,
        GuidanceMode::PREVENTION,
    ] {
        let s = setup(50.0, gust, mode, 20.0);
        let init = SimState::default_start(&s.path, 9.0);
        assert_eq!(
            run_scenario(init, &s).unwrap(),
            run_scenario(init, &s).unwrap()
        );
    }
}

#[test]
fn logged_ground_velocity_matches_kinematics() {
    let gust = WindModel::Sinusoidal {
        mean: east(6.0),
        amplitude: 2.0,
        period: 30.0,
        direction: east(1.0),
    };
    let s = setup(40.0, gust, GuidanceMode::PREVENTION, 30.0);
    let traj = run_scenario(SimState::default_start(&s.path, 9.0), &s).unwrap();
    for r in traj.iter() {
        let c = Controls {
            roll_ref: r.guidance.roll_ref,
            airspeed_ref: r.guidance.airspeed_ref,
        };
        let d = derivatives(&r.state, c, r.wind, &s.sim).unwrap();
        assert!((d.n - r.ground_velocity.n).abs() < 1e-9);
        assert!((d.e - r.ground_velocity.e).abs() < 1e-9);
        assert!(r.state.heading > -PI && r.state.heading <= PI);
    }
}

#[test]
fn output_limits_hold_along_runs() {
    let cases = [
        (15.0, WindModel::Constant { mean: east(3.0) }),
        (50.0, WindModel::Constant { mean: east(12.0) }),
        (
            50.0,
            WindModel::Sinusoidal {
                mean: east(10.0),
                amplitude: 2.0,
                period: 30.0,
                direction: east(1.0),
            },
        ),
    ];
    for (radius, wind) in cases {
        for (_, mode) in GuidanceMode::NAMED {
            let s = setup(radius, wind, mode, 60.0);
            let traj = run_scenario(SimState::default_start(&s.path, 9.0), &s).unwrap();
            let lim = s.config.guidance.roll_limit;
            for r in traj.iter() {
                let g = &r.guidance;
                assert!(g.roll_ref.abs() <= lim);
                assert!(g.eta.abs() <= PI / 2.0);
                assert!((0.0..=1.0).contains(&g.sigma));
                assert!((9.0..=12.0).contains(&g.airspeed_ref));
                assert!(g.effective_period <= s.config.guidance.period);
                assert!(r.state.roll.abs() <= lim + 1e-12);
            }
        }
    }
}

#[test]
fn guidance_decimation_holds_commands() {
    let mut s = setup(
        50.0,
        WindModel::Constant { mean: east(4.0) },
        GuidanceMode::ADAPTIVE,
        2.0,
    );
    s.sim.guidance_decimation = 5;
    let traj = run_scenario(SimState::default_start(&s.path, 9.0), &s).unwrap();
    for (k, pair) in traj.records.windows(2).enumerate() {
        if (k + 1) % 5 != 0 {
            assert_eq!(
                pair[0].guidance.roll_ref, pair[1].guidance.roll_ref,
                "step {k}"
            );
        }
    }
}

#[test]
fn invalid_setup_is_rejected_before_running() {
    let mut s = setup(50.0, WindModel::calm(), GuidanceMode::ORIGINAL, 1.0);
    s.sim.dt = 0.5;
    let init = SimState::default_start(&s.path, 9.0);
    assert!(matches!(
        run_scenario(init, &s),
        Err(Error::InvalidArgument(_))
    ));

    let s = setup(50.0, WindModel::calm(), GuidanceMode::ORIGINAL, 1.0);
    let stalled = SimState {
        airspeed: 0.05,
        ..init
    };
    assert!(run_scenario(stalled, &s).is_err());
}

#[test]
fn calm_orbit_closes_on_the_circle() {
    let s = setup(50.0, WindModel::calm(), GuidanceMode::PREVENTION, 120.0);
    let traj = run_scenario(SimState::default_start(&s.path, 9.0), &s).unwrap();
    let last = traj.last().unwrap();
    assert!(last.guidance.geometry.cross_track.abs() < 0.1);
    // no wind: compensation never engages and sigma stays at one
    assert!(traj
        .iter()
        .all(|r| r.guidance.sigma == 1.0 && r.guidance.airspeed_ref == 9.0));
}
