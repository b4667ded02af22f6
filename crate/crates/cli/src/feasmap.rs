//! Feasibility function sampled on a (beta, lambda) grid.

use std::io::{self, Write};

use loiter_guidance::feasibility::{sigma_feas, sigma_legacy};
use loiter_guidance::{Error, FeasibilityParams};

use crate::output::fmt_value;

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum MapError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Guidance(#[from] Error),
}

/// Writes `beta,lambda,sigma_feas,sigma_legacy` rows, lambda varying fastest.
pub fn export_feasibility_map<W: Write>(
    mut out: W,
    params: &FeasibilityParams,
    beta_buf: f64,
    beta_grid: &[f64],
    lambda_grid: &[f64],
) -> Result<(), MapError> {
    params.validate()?;
    if beta_grid.is_empty() || lambda_grid.is_empty() {
        return Err(Error::InvalidArgument("feasibility grid is empty".into()).into());
    }
    writeln!(out, "beta,lambda,sigma_feas,sigma_legacy")?;
    for &beta in beta_grid {
        for &lambda in lambda_grid {
            let s = sigma_feas(beta, lambda, beta_buf, params)?.sigma;
            let l = sigma_legacy(beta, lambda);
            writeln!(
                out,
                "{},{},{},{}",
                fmt_value(beta),
                fmt_value(lambda),
                fmt_value(s),
                fmt_value(l)
            )?;
        }
    }
    out.flush()?;
    Ok(())
}
