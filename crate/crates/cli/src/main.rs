use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use loiter_guidance::{Error as GuidanceError, FeasibilityParams, GuidanceMode};
use loiter_sim::feasmap::{export_feasibility_map, linspace};
use loiter_sim::{builtin_catalog, config, output, plot, run_modes, RunSummary, ScenarioSpec};

#[derive(Parser)]
#[command(
    name = "loiter-sim",
    version,
    about = "Wind-aware loiter guidance simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a scenario and write trajectory CSV and/or a summary.
    Run(RunArgs),
    /// Sample the feasibility function on a (beta, lambda) grid.
    Feasmap(FeasmapArgs),
    /// Print a gnuplot script for trajectory CSV files.
    PlotScript {
        /// Trajectory CSV files.
        #[arg(required = true)]
        csv: Vec<String>,
        /// Image the script renders to.
        #[arg(long, default_value = "loiter.png")]
        png: String,
    },
    /// Print the full configuration of a built-in scenario.
    DumpConfig {
        #[arg(long)]
        scenario: String,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    /// Built-in scenario (see --list).
    #[arg(long, required_unless_present_any = ["list", "config"])]
    scenario: Option<String>,
    /// original, adaptive, mitigation or prevention; default: the scenario's modes.
    #[arg(long, value_parser = parse_mode)]
    mode: Option<GuidanceMode>,
    /// INI file applied on top of the scenario (or on top of small-radius).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Trajectory CSV; with several modes, `_<mode>` is added to the stem.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print run summaries (always on without --out).
    #[arg(long)]
    summary: bool,
    /// List the built-in scenarios and exit.
    #[arg(long)]
    list: bool,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    /// Run modes one after another instead of on separate threads.
    #[arg(long)]
    sequential: bool,
}

#[derive(clap::Args)]
struct FeasmapArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    /// Airspeed used for the buffer ratio (m/s).
    #[arg(long, default_value_t = 9.0)]
    airspeed: f64,
    #[arg(long, default_value_t = 1.0)]
    airspeed_buffer: f64,
    #[arg(long, default_value_t = 3.0)]
    beta_max: f64,
    #[arg(long, default_value_t = 301)]
    beta_steps: usize,
    #[arg(long, default_value_t = 361)]
    lambda_steps: usize,
}

fn parse_mode(s: &str) -> std::result::Result<GuidanceMode, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = GuidanceMode::NAMED.iter().map(|(n, _)| *n).collect();
        format!("expected one of {}", names.join(", "))
    })
}

/// Bad command-line input that clap cannot see.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct UsageError(String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => run(args),
        Command::Feasmap(args) => feasmap(args),
        Command::PlotScript { csv, png } => {
            print!("{}", plot::gnuplot_script(&csv, &png));
            Ok(())
        }
        Command::DumpConfig { scenario } => {
            print!("{}", config::to_string(&lookup(&scenario)?));
            Ok(())
        }
    }
}

fn lookup(name: &str) -> Result<ScenarioSpec> {
    loiter_sim::find(name).ok_or_else(|| {
        let names: Vec<_> = builtin_catalog().into_iter().map(|s| s.name).collect();
        UsageError(format!(
            "unknown scenario `{name}`; available: {}",
            names.join(", ")
        ))
        .into()
    })
}

fn mode_path(out: &Path, mode: GuidanceMode, several: bool) -> PathBuf {
    if !several {
        return out.to_path_buf();
    }
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match out.extension() {
        Some(ext) => format!("{stem}_{mode}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{mode}"),
    };
    out.with_file_name(name)
}

fn run(args: RunArgs) -> Result<()> {
    if args.list {
        for s in builtin_catalog() {
            let modes: Vec<_> = s.modes.iter().map(|m| m.to_string()).collect();
            println!("{}\t{}", s.name, modes.join(","));
        }
        return Ok(());
    }
    let base = lookup(args.scenario.as_deref().unwrap_or("small-radius"))?;
    let mut spec = match &args.config {
        Some(path) => config::load(path, &base)
            .map_err(|e| UsageError(format!("config {}: {e}", path.display())))?,
        None => base,
    };
    if let Some(dt) = args.dt {
        spec.sim.dt = dt;
    }
    if let Some(t_end) = args.t_end {
        spec.sim.t_end = t_end;
    }
    let modes = match args.mode {
        Some(m) => vec![m],
        None => spec.modes.clone(),
    };
    if modes.is_empty() {
        return Err(UsageError("scenario has no modes; pass --mode".into()).into());
    }
    spec.modes = modes.clone();
    spec.validate().map_err(|e| UsageError(e.to_string()))?;

    let results = run_modes(&spec, &modes, !args.sequential);
    let several = modes.len() > 1;
    let stdout = io::stdout();
    let mut stdout = stdout.lock();
    for (mode, result) in modes.iter().zip(results) {
        let traj = result.map_err(|e| match e {
            GuidanceError::SimulationFault { step, reason } => {
                anyhow::anyhow!(
                    "{} / {mode}: simulation fault at step {step}: {reason}",
                    spec.name
                )
            }
            other => anyhow::anyhow!("{} / {mode}: {other}", spec.name),
        })?;
        if let Some(out) = &args.out {
            let path = mode_path(out, *mode, several);
            let file =
                File::create(&path).with_context(|| format!("creating {}", path.display()))?;
            output::write_csv(BufWriter::new(file), &traj)
                .with_context(|| format!("writing {}", path.display()))?;
        }
        if args.summary || args.out.is_none() {
            let summary = RunSummary::from_trajectory(&traj).context("empty trajectory")?;
            writeln!(stdout, "[{} / {mode}]\n{summary}\n", spec.name)?;
        }
    }
    Ok(())
}

fn feasmap(args: FeasmapArgs) -> Result<()> {
    if args.beta_steps == 0 || args.lambda_steps == 0 {
        return Err(UsageError("grid sizes must be positive".into()).into());
    }
    if args.airspeed.is_nan() || args.airspeed <= 0.0 {
        return Err(UsageError("--airspeed must be positive".into()).into());
    }
    let params = FeasibilityParams {
        airspeed_buffer: args.airspeed_buffer,
        ..FeasibilityParams::default()
    };
    params.validate().map_err(|e| UsageError(e.to_string()))?;
    let beta_buf = loiter_guidance::feasibility::buffer_ratio(&params, args.airspeed);
    let betas = linspace(0.0, args.beta_max, args.beta_steps);
    let lambdas = linspace(
        -std::f64::consts::PI,
        std::f64::consts::PI,
        args.lambda_steps,
    );
    match &args.out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            export_feasibility_map(BufWriter::new(file), &params, beta_buf, &betas, &lambdas)?;
        }
        None => export_feasibility_map(io::stdout().lock(), &params, beta_buf, &betas, &lambdas)?,
    }
    Ok(())
}
