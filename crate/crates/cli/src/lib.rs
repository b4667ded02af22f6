//! Scenario runner for the loiter guidance simulator: built-in scenarios,
//! INI configuration, CSV output and run summaries.

pub mod config;
pub mod feasmap;
pub mod output;
pub mod plot;
pub mod scenario;
pub mod summary;

use loiter_guidance::{run_scenario, GuidanceMode, Result, Trajectory};

pub use scenario::{builtin_catalog, find, ScenarioSpec};
pub use summary::RunSummary;

/// Runs `spec` once per mode. Results come back in the order of `modes`.
pub fn run_modes(
    spec: &ScenarioSpec,
    modes: &[GuidanceMode],
    parallel: bool,
) -> Vec<Result<Trajectory>> {
    let init = spec.initial_state();
    let one = |m: GuidanceMode| run_scenario(init, &spec.setup(m));
    if !parallel || modes.len() < 2 {
        return modes.iter().map(|m| one(*m)).collect();
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = modes.iter().map(|m| scope.spawn(move || one(*m))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation thread panicked"))
            .collect()
    })
}
