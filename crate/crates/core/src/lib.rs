//! Occupancy-grid path planning with a rotating-bar sensor sweep and an
//! adaptive winner-take-all network, plus an exact shortest-path oracle for
//! measuring how good the resulting paths are.
//!
//! ```
//! use sweep_planner::ann_planner::{plan, Outcome, PlannerConfig};
//! use sweep_planner::grid_world::load_ascii_map;
//!
//! let map = load_ascii_map("S.....\n.####.\n.....G").unwrap();
//! let trace = plan(&map, &PlannerConfig::for_map(&map)).unwrap();
//! assert_eq!(trace.outcome, Outcome::Success);
//! ```

pub mod ann_planner;
pub mod baselines;
pub mod cli_harness;
pub mod grid_world;
pub mod sensor;
