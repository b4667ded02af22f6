//! L1 ratio adaptation for loiter radii smaller than the nominal L1 length.
//!
//! Convergence to a circle needs `L1 <= R`. When the nominal length violates
//! that near the perimeter, the length is ramped linearly from the nominal
//! value down to `R` as the cross-track error shrinks, and the ratio is
//! recomputed from it. Far from the circle the operator tuning is kept.

use crate::error::{invalid, Result};

/// Adapted `(L1, q_L)`.
///
/// `ground_speed` must already be floored at the guidance ground-speed minimum.
pub fn adapt_l1(
    ratio_nominal: f64,
    ground_speed: f64,
    radius: f64,
    cross_track: f64,
) -> Result<(f64, f64)> {
    if radius.is_nan() || radius <= 0.0 {
        return Err(invalid(format!("loiter radius must be > 0, got {radius}")));
    }
    if ground_speed.is_nan() || ground_speed <= 0.0 {
        return Err(invalid(format!(
            "ground speed must be > 0, got {ground_speed}"
        )));
    }
    let nominal = ratio_nominal * ground_speed;
    let err = cross_track.abs();
    if nominal > radius && err <= nominal {
        let length = err.max(radius);
        Ok((length, length / ground_speed))
    } else {
        Ok((nominal, ratio_nominal))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    const Q_NOM: f64 = 5.6261;

    #[test]
    fn small_radius_on_circle_clamps_to_radius() {
        let (l1, q) = adapt_l1(Q_NOM, 9.0, 15.0, 0.0).unwrap();
        assert_eq!(l1, 15.0);
        assert_abs_diff_eq!(q, 15.0 / 9.0);
    }

    #[test]
    fn large_radius_untouched() {
        let (l1, q) = adapt_l1(Q_NOM, 9.0, 100.0, 3.0).unwrap();
        assert_abs_diff_eq!(l1, Q_NOM * 9.0);
        assert_eq!(q, Q_NOM);
    }

    #[test]
    fn ramp_branch() {
        let (l1, q) = adapt_l1(Q_NOM, 9.0, 15.0, 30.0).unwrap();
        assert_eq!(l1, 30.0);
        assert_abs_diff_eq!(q, 30.0 / 9.0);
        // inside the circle the magnitude of the error is used
        assert_eq!(adapt_l1(Q_NOM, 9.0, 15.0, -12.0).unwrap().0, 15.0);
    }

    #[test]
    fn far_outside_keeps_nominal() {
        let (l1, q) = adapt_l1(Q_NOM, 9.0, 15.0, 80.0).unwrap();
        assert_abs_diff_eq!(l1, Q_NOM * 9.0);
        assert_eq!(q, Q_NOM);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(adapt_l1(Q_NOM, 9.0, 0.0, 0.0).is_err());
        assert!(adapt_l1(Q_NOM, 0.0, 15.0, 0.0).is_err());
        assert!(adapt_l1(Q_NOM, 9.0, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn continuous_in_cross_track() {
        let (v, r) = (9.0, 15.0);
        let nominal = Q_NOM * v;
        let step = 1e-4;
        let n = (2.0 * nominal / step) as usize;
        let mut prev = adapt_l1(Q_NOM, v, r, 0.0).unwrap().0;
        for i in 1..=n {
            let cur = adapt_l1(Q_NOM, v, r, i as f64 * step).unwrap().0;
            assert!(
                (cur - prev).abs() <= step + 1e-9 * cur,
                "jump at e_t={}",
                i as f64 * step
            );
            prev = cur;
        }
    }

    proptest! {
        #[test]
        fn period_never_grows(
            q in 0.5f64..10.0, v in 1.0f64..30.0, r in 1.0f64..300.0, e in -400.0f64..400.0,
        ) {
            let damping = 0.707;
            let period = q * PI / damping;
            let (l1, q_adapted) = adapt_l1(q, v, r, e).unwrap();
            let p_eff = q_adapted * PI / damping;
            prop_assert!(p_eff <= period * (1.0 + 1e-12));
            prop_assert!((q_adapted * v - l1).abs() <= 1e-12 * l1);
            if q * v <= r || e.abs() > q * v {
                prop_assert_eq!(q_adapted, q);
            } else {
                prop_assert!(l1 >= r);
            }
        }
    }
}
