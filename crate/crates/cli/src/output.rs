//! Trajectory CSV.

use std::io::{self, Write};

use loiter_guidance::{Record, Trajectory};

pub const COLUMNS: [&str; 20] = [
    "t",
    "n",
    "e",
    "v_A",
    "xi",
    "phi",
    "phi_ref",
    "v_A_ref",
    "a_ref",
    "sigma_feas",
    "beta",
    "lambda",
    "e_t",
    "L1",
    "q_L",
    "P_eff",
    "w_n",
    "w_e",
    "chi",
    "eta",
];

/// Column index (1-based, as gnuplot counts) of `name`.
pub fn column(name: &str) -> Option<usize> {
    COLUMNS.iter().position(|c| *c == name).map(|i| i + 1)
}

fn row(r: &Record) -> [f64; 20] {
    let s = &r.state;
    let g = &r.guidance;
    [
        s.t,
        s.n,
        s.e,
        s.airspeed,
        s.heading,
        s.roll,
        g.roll_ref,
        g.airspeed_ref,
        g.accel_ref,
        g.sigma,
        g.beta,
        g.lambda,
        g.geometry.cross_track,
        g.geometry.length,
        g.geometry.ratio,
        g.effective_period,
        r.wind.n,
        r.wind.e,
        g.course,
        g.eta,
    ]
}

/// Nine significant digits in scientific notation.
pub fn fmt_value(x: f64) -> String {
    format!("{x:.8e}")
}

pub fn write_csv<W: Write>(mut out: W, traj: &Trajectory) -> io::Result<()> {
    writeln!(out, "{}", COLUMNS.join(","))?;
    let mut line = String::with_capacity(20 * 16);
    for r in traj.iter() {
        line.clear();
        for (i, x) in row(r).iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            line.push_str(&fmt_value(*x));
        }
        writeln!(out, "{line}")?;
    }
    out.flush()
}
