//! Wind-aware L1 loiter guidance for small fixed-wing aircraft.
//!
//! The guidance law extends classic L1 circle following with:
//!
//! - an adaptive L1 ratio that keeps `L1 <= R` near small loiter circles,
//! - a smooth bearing-feasibility function that blends ground-velocity
//!   tracking into air-velocity "turn into the wind" behaviour when the wind
//!   exceeds the airspeed (run-away mitigation),
//! - an airspeed reference increment driven by the same feasibility value
//!   (run-away prevention).
//!
//! A deterministic planar point-mass simulator ([`sim`]) closes the loop.

pub mod adapt;
pub mod airspeed;
pub mod controller;
pub mod error;
pub mod feasibility;
pub mod geom;
pub mod l1;
pub mod sim;

pub use adapt::adapt_l1;
pub use airspeed::{airspeed_ref, AirspeedPolicy};
pub use controller::{guidance_step, GuidanceConfig, GuidanceInput, GuidanceMode, GuidanceOutput};
pub use error::{Error, Result};
pub use feasibility::{FeasibilityEval, FeasibilityParams};
pub use geom::Vec2NE;
pub use l1::{GuidanceParams, L1Geometry, LoiterDirection, LoiterPath};
pub use sim::{run_scenario, Record, RunSetup, SimParams, SimState, Trajectory, WindModel};
