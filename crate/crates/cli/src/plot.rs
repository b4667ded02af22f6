//! Gnuplot script for trajectory CSV files.

use crate::output::column;

fn col(name: &str) -> usize {
    column(name).expect("known column")
}

/// A script that plots every CSV in `csvs` (one curve per file) to a PNG
/// multiplot at `png`.
pub fn gnuplot_script(csvs: &[String], png: &str) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set terminal pngcairo size 1400,1000\n");
    s.push_str(&format!("set output '{png}'\n"));
    s.push_str("set key autotitle columnhead\n");
    s.push_str("set multiplot layout 2,2\n");
    let panels = [
        ("Track", "e [m]", "n [m]", col("e"), col("n")),
        (
            "Roll reference",
            "t [s]",
            "phi_ref [rad]",
            col("t"),
            col("phi_ref"),
        ),
        (
            "Airspeed reference",
            "t [s]",
            "v_A_ref [m/s]",
            col("t"),
            col("v_A_ref"),
        ),
        ("Feasibility", "t [s]", "sigma", col("t"), col("sigma_feas")),
    ];
    for (title, xl, yl, x, y) in panels {
        s.push_str(&format!(
            "set title '{title}'\nset xlabel '{xl}'\nset ylabel '{yl}'\n"
        ));
        if title == "Track" {
            s.push_str("set size ratio -1\n");
        } else {
            s.push_str("set size noratio\n");
        }
        let curves: Vec<String> = csvs
            .iter()
            .map(|f| {
                format!(
                    "'{f}' using {x}:{y} with lines title '{}'",
                    f.replace('_', "\\_")
                )
            })
            .collect();
        s.push_str(&format!("plot {}\n", curves.join(", \\\n     ")));
    }
    s.push_str("unset multiplot\n");
    s
}
