//! Baseline L1 loiter guidance: ratio and gain from period/damping, the
//! look-ahead bearing from the law of cosines, error angle, lateral
//! acceleration and the coordinated-turn roll reference.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{invalid, Result};
use crate::geom::{bearing_of, clamp, norm, wrap_pi_unchecked, Vec2NE};

/// Floor on `L1 * d` in the law-of-cosines denominator.
const MIN_COSINE_DENOM: f64 = 1e-9;

/// Operator tuning of the lateral guidance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuidanceParams {
    /// L1 period (s).
    pub period: f64,
    /// L1 damping.
    pub damping: f64,
    /// Roll reference limit (rad).
    pub roll_limit: f64,
    /// Ground speed floor used before any division by ground speed (m/s).
    pub ground_speed_min: f64,
    /// Radius around the loiter center inside which the center offset is replaced (m).
    pub center_eps: f64,
    pub gravity: f64,
}

impl Default for GuidanceParams {
    fn default() -> Self {
        Self {
            period: 25.0,
            damping: 0.707,
            roll_limit: 35f64.to_radians(),
            ground_speed_min: 2.0,
            center_eps: 0.1,
            gravity: 9.81,
        }
    }
}

impl GuidanceParams {
    pub fn validate(&self) -> Result<()> {
        let ok = |c: bool, what: &str| {
            if c {
                Ok(())
            } else {
                Err(invalid(what.to_string()))
            }
        };
        ok(
            self.period.is_finite() && self.period > 0.0,
            "L1 period must be > 0",
        )?;
        ok(
            self.damping > 0.0 && self.damping <= 1.0,
            "L1 damping must lie in (0, 1]",
        )?;
        ok(
            self.roll_limit > 0.0 && self.roll_limit < FRAC_PI_2,
            "roll limit must lie in (0, pi/2)",
        )?;
        ok(
            self.ground_speed_min.is_finite() && self.ground_speed_min > 0.0,
            "ground speed floor must be > 0",
        )?;
        ok(
            self.center_eps.is_finite() && self.center_eps > 0.0,
            "center singularity radius must be > 0",
        )?;
        ok(
            self.gravity.is_finite() && self.gravity > 0.0,
            "gravity must be > 0",
        )
    }

    /// Period implied by a given L1 ratio at this damping. Scaled from the
    /// nominal ratio so that the nominal ratio gives back `period` exactly.
    pub fn effective_period(&self, ratio: f64) -> f64 {
        let (nominal, _) = l1_ratio_and_gain(self);
        self.period * (ratio / nominal)
    }
}

/// Loiter direction. Clockwise is `+1` when viewed from above.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoiterDirection {
    Clockwise,
    CounterClockwise,
}

impl LoiterDirection {
    pub fn sign(self) -> f64 {
        match self {
            LoiterDirection::Clockwise => 1.0,
            LoiterDirection::CounterClockwise => -1.0,
        }
    }

    pub fn from_sign(s: i32) -> Result<Self> {
        match s {
            1 => Ok(LoiterDirection::Clockwise),
            -1 => Ok(LoiterDirection::CounterClockwise),
            other => Err(invalid(format!(
                "loiter direction must be +1 or -1, got {other}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoiterPath {
    pub center: Vec2NE,
    pub radius: f64,
    pub direction: LoiterDirection,
}

impl LoiterPath {
    pub fn new(center: Vec2NE, radius: f64, direction: LoiterDirection) -> Result<Self> {
        let path = Self {
            center,
            radius,
            direction,
        };
        path.validate()?;
        Ok(path)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.center.is_finite() {
            return Err(invalid("loiter center must be finite"));
        }
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(invalid(format!(
                "loiter radius must be > 0, got {}",
                self.radius
            )));
        }
        Ok(())
    }

    /// Vector from `p` to the center. Inside `eps` of the center it is
    /// replaced by `(eps, 0)` so that the geometry stays defined.
    pub fn center_offset(&self, p: Vec2NE, eps: f64) -> Vec2NE {
        let d = self.center - p;
        if norm(d) < eps {
            Vec2NE::new(eps, 0.0)
        } else {
            d
        }
    }
}

/// Look-ahead scaling fed to the loiter geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1Scale {
    /// L1 ratio (s).
    pub ratio: f64,
    /// L1 gain.
    pub gain: f64,
    /// L1 length (m).
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1Geometry {
    pub ratio: f64,
    pub gain: f64,
    pub length: f64,
    /// Angle between the center direction and the L1 vector, in `[0, pi]`.
    pub gamma: f64,
    /// Bearing from the aircraft to the center.
    pub chi_center: f64,
    /// L1 bearing.
    pub chi_l1: f64,
    /// Distance to center, after the singularity guard.
    pub distance: f64,
    /// Cross-track error `d - R`, positive outside the circle.
    pub cross_track: f64,
}

impl L1Geometry {
    /// The look-ahead vector `L1 (cos chi_L, sin chi_L)`.
    pub fn l1_vector(&self) -> Vec2NE {
        Vec2NE::from_bearing(self.chi_l1) * self.length
    }
}

/// `(q_L, k_L)` from period and damping.
pub fn l1_ratio_and_gain(params: &GuidanceParams) -> (f64, f64) {
    let ratio = params.period * params.damping / PI;
    let gain = 4.0 * params.damping * params.damping;
    (ratio, gain)
}

/// Law-of-cosines L1 bearing for a loiter circle.
///
/// `offset` is the (already guarded) vector from the aircraft to the center.
pub fn loiter_geometry(offset: Vec2NE, path: &LoiterPath, scale: L1Scale) -> Result<L1Geometry> {
    let d = norm(offset);
    let l1 = scale.length;
    let r = path.radius;
    let denom = (2.0 * l1 * d).max(MIN_COSINE_DENOM);
    let gamma = clamp((l1 * l1 + d * d - r * r) / denom, -1.0, 1.0).acos();
    let chi_center = bearing_of(offset)?;
    let chi_l1 = wrap_pi_unchecked(chi_center - path.direction.sign() * gamma);
    Ok(L1Geometry {
        ratio: scale.ratio,
        gain: scale.gain,
        length: l1,
        gamma,
        chi_center,
        chi_l1,
        distance: d,
        cross_track: d - r,
    })
}

/// Error angle between a reference bearing and a course, saturated to `[-pi/2, pi/2]`.
pub fn error_angle(chi_ref: f64, chi: f64) -> f64 {
    clamp(wrap_pi_unchecked(chi_ref - chi), -FRAC_PI_2, FRAC_PI_2)
}

/// Lateral acceleration reference `k_L v / q_L sin(eta)`.
pub fn accel_ref(gain: f64, speed: f64, ratio: f64, eta: f64) -> f64 {
    gain * speed / ratio * eta.sin()
}

/// Coordinated-turn roll reference, saturated at the roll limit.
pub fn roll_ref(accel: f64, params: &GuidanceParams) -> f64 {
    clamp(
        (accel / params.gravity).atan(),
        -params.roll_limit,
        params.roll_limit,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_3;

    fn cw(radius: f64) -> LoiterPath {
        LoiterPath::new(Vec2NE::ZERO, radius, LoiterDirection::Clockwise).unwrap()
    }

    fn scale(length: f64) -> L1Scale {
        L1Scale {
            ratio: 1.0,
            gain: 2.0,
            length,
        }
    }

    #[test]
    fn ratio_and_gain() {
        let (q, k) = l1_ratio_and_gain(&GuidanceParams::default());
        // 25 * 0.707 / pi and 4 * 0.707^2
        assert_abs_diff_eq!(q, 5.626_127_238_3, epsilon = 1e-9);
        assert_abs_diff_eq!(k, 1.999_396, epsilon = 1e-12);

        let p = GuidanceParams {
            period: PI,
            damping: 1.0,
            ..Default::default()
        };
        assert_eq!(l1_ratio_and_gain(&p), (1.0, 4.0));
        let p = GuidanceParams {
            period: 2.0 * PI,
            damping: 0.5,
            ..Default::default()
        };
        assert_eq!(l1_ratio_and_gain(&p), (1.0, 1.0));
    }

    #[test]
    fn params_validation() {
        assert!(GuidanceParams::default().validate().is_ok());
        let bad = GuidanceParams {
            damping: 1.5,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = GuidanceParams {
            roll_limit: FRAC_PI_2,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        assert!(LoiterPath::new(Vec2NE::ZERO, 0.0, LoiterDirection::Clockwise).is_err());
        assert!(LoiterDirection::from_sign(0).is_err());
    }

    #[test]
    fn law_of_cosines_equilateral() {
        // aircraft 10 m south of the center, L1 = d = R = 10
        let path = cw(10.0);
        let p = Vec2NE::new(-10.0, 0.0);
        let g = loiter_geometry(path.center_offset(p, 0.1), &path, scale(10.0)).unwrap();
        assert_abs_diff_eq!(g.gamma, FRAC_PI_3, epsilon = 1e-12);
        assert_eq!(g.chi_center, 0.0);
        assert_abs_diff_eq!(g.chi_l1, -FRAC_PI_3, epsilon = 1e-12);
        assert_abs_diff_eq!(g.cross_track, 0.0);
    }

    #[test]
    fn far_away_points_at_center() {
        let path = cw(50.0);
        let p = Vec2NE::new(3000.0, -4000.0);
        let g = loiter_geometry(path.center_offset(p, 0.1), &path, scale(20.0)).unwrap();
        assert_eq!(g.gamma, 0.0);
        assert_abs_diff_eq!(g.chi_l1, g.chi_center);
        assert_abs_diff_eq!(g.distance, 5000.0);
    }

    #[test]
    fn center_singularity_guard() {
        let path = cw(20.0);
        let offset = path.center_offset(Vec2NE::new(0.01, -0.02), 0.1);
        assert_eq!(offset, Vec2NE::new(0.1, 0.0));
        let g = loiter_geometry(offset, &path, scale(5.0)).unwrap();
        assert!(g.gamma.is_finite() && g.chi_l1.is_finite());
        assert_abs_diff_eq!(g.cross_track, 0.1 - 20.0);
    }

    #[test]
    fn error_angle_examples() {
        assert_eq!(error_angle(0.3, 0.3), 0.0);
        assert_eq!(error_angle(PI, 0.0), FRAC_PI_2);
        // wrap(-3pi/4 - 3pi/4) = wrap(-3pi/2) = pi/2
        assert_abs_diff_eq!(
            error_angle(-0.75 * PI, 0.75 * PI),
            FRAC_PI_2,
            epsilon = 1e-12
        );
    }

    #[test]
    fn accel_and_roll() {
        assert_eq!(accel_ref(2.0, 10.0, 5.0, 0.0), 0.0);
        assert_abs_diff_eq!(accel_ref(2.0, 10.0, 5.0, FRAC_PI_2), 4.0);
        let params = GuidanceParams::default();
        assert_eq!(roll_ref(0.0, &params), 0.0);
        let wide = GuidanceParams {
            roll_limit: 50f64.to_radians(),
            ..params
        };
        assert_abs_diff_eq!(roll_ref(wide.gravity, &wide), PI / 4.0, epsilon = 1e-15);
        assert_eq!(
            roll_ref(100.0 * params.gravity, &params),
            35f64.to_radians()
        );
        assert_eq!(
            roll_ref(-100.0 * params.gravity, &params),
            -35f64.to_radians()
        );
    }

    #[test]
    fn on_circle_tangency_limit() {
        let r = 40.0;
        let path = cw(r);
        let p = Vec2NE::new(-r, 0.0);
        for l1 in [60.0, 30.0, 1.0, 1e-3] {
            let g = loiter_geometry(path.center_offset(p, 0.1), &path, scale(l1)).unwrap();
            assert_abs_diff_eq!(g.gamma, (l1 / (2.0 * r)).acos(), epsilon = 1e-6);
        }
        let g = loiter_geometry(path.center_offset(p, 0.1), &path, scale(1e-7)).unwrap();
        // tangent to a clockwise circle on its southern side points west
        assert_abs_diff_eq!(g.chi_l1, -FRAC_PI_2, epsilon = 1e-6);
    }

    proptest! {
        #[test]
        fn geometry_ranges_and_mirror(
            pn in -500.0f64..500.0, pe in -500.0f64..500.0,
            r in 1.0f64..200.0, l1 in 0.5f64..300.0,
        ) {
            let p = Vec2NE::new(pn, pe);
            let cw_path = cw(r);
            let ccw_path = LoiterPath { direction: LoiterDirection::CounterClockwise, ..cw_path };
            let off = cw_path.center_offset(p, 0.1);
            let a = loiter_geometry(off, &cw_path, scale(l1)).unwrap();
            let b = loiter_geometry(off, &ccw_path, scale(l1)).unwrap();
            prop_assert!((0.0..=PI).contains(&a.gamma));
            prop_assert!(a.chi_l1 > -PI && a.chi_l1 <= PI);
            let da = wrap_pi_unchecked(a.chi_l1 - a.chi_center);
            let db = wrap_pi_unchecked(b.chi_l1 - b.chi_center);
            // exact unless the offset sits on the +-pi seam
            if da.abs() < PI - 1e-9 {
                prop_assert!((da + db).abs() < 1e-12);
            }
        }

        #[test]
        fn roll_never_exceeds_limit(a in -1e6f64..1e6) {
            let params = GuidanceParams::default();
            prop_assert!(roll_ref(a, &params).abs() <= params.roll_limit);
        }

        #[test]
        fn accel_sign_follows_eta(eta in -FRAC_PI_2..FRAC_PI_2, v in 0.1f64..50.0) {
            let a = accel_ref(2.0, v, 5.0, eta);
            prop_assert_eq!(a.signum() == eta.signum() || a == 0.0, true);
        }
    }
}
