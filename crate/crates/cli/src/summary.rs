use std::fmt;

use loiter_guidance::Trajectory;

/// Scalar metrics of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub final_cross_track: f64,
    /// Mean |e_t| over the last quarter of the samples.
    pub mean_cross_track_tail: f64,
    /// Largest roll-reference change between consecutive samples (rad).
    pub max_roll_ref_step: f64,
    pub terminal_ground_speed: f64,
    pub airspeed_ref_min: f64,
    pub airspeed_ref_max: f64,
    pub effective_period_min: f64,
    pub effective_period_max: f64,
}

impl RunSummary {
    pub fn from_trajectory(traj: &Trajectory) -> Option<Self> {
        let last = traj.last()?;
        let recs = &traj.records;
        let tail = &recs[recs.len() * 3 / 4..];
        let mean_tail = tail
            .iter()
            .map(|r| r.guidance.geometry.cross_track.abs())
            .sum::<f64>()
            / tail.len() as f64;
        let max_step = recs
            .windows(2)
            .map(|w| (w[1].guidance.roll_ref - w[0].guidance.roll_ref).abs())
            .fold(0.0, f64::max);
        let minmax = |f: fn(&loiter_guidance::Record) -> f64| {
            recs.iter()
                .map(f)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
                    (lo.min(x), hi.max(x))
                })
        };
        let (va_lo, va_hi) = minmax(|r| r.guidance.airspeed_ref);
        let (p_lo, p_hi) = minmax(|r| r.guidance.effective_period);
        Some(Self {
            final_cross_track: last.guidance.geometry.cross_track.abs(),
            mean_cross_track_tail: mean_tail,
            max_roll_ref_step: max_step,
            terminal_ground_speed: last.ground_velocity.norm(),
            airspeed_ref_min: va_lo,
            airspeed_ref_max: va_hi,
            effective_period_min: p_lo,
            effective_period_max: p_hi,
        })
    }
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "final_cross_track_m = {:.4}", self.final_cross_track)?;
        writeln!(
            f,
            "mean_cross_track_last_quarter_m = {:.4}",
            self.mean_cross_track_tail
        )?;
        writeln!(
            f,
            "max_roll_ref_step_deg = {:.4}",
            self.max_roll_ref_step.to_degrees()
        )?;
        writeln!(
            f,
            "terminal_ground_speed_mps = {:.4}",
            self.terminal_ground_speed
        )?;
        writeln!(f, "airspeed_ref_min_mps = {:.4}", self.airspeed_ref_min)?;
        writeln!(f, "airspeed_ref_max_mps = {:.4}", self.airspeed_ref_max)?;
        writeln!(
            f,
            "effective_period_min_s = {:.4}",
            self.effective_period_min
        )?;
        write!(
            f,
            "effective_period_max_s = {:.4}",
            self.effective_period_max
        )
    }
}
