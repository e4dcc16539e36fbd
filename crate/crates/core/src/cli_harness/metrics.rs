use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::ann_planner::{plan, Outcome, PlanError, PlanTrace, PlannerConfig};
use crate::baselines::shortest_path;
use crate::grid_world::GridMap;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub success: bool,
    /// Position transitions (moves, backtracks and the goal snap).
    pub steps: usize,
    pub sweeps: usize,
    pub path_length: f64,
    pub oracle_length: Option<f64>,
    /// `path_length / oracle_length`, successful runs only.
    pub suboptimality: Option<f64>,
    pub wall_time_ms: f64,
}

/// Plans on `map` and measures the run against the oracle.
pub fn evaluate(map: &GridMap, cfg: &PlannerConfig) -> Result<(PlanTrace, RunMetrics), PlanError> {
    let t0 = Instant::now();
    let trace = plan(map, cfg)?;
    let wall_time_ms = t0.elapsed().as_secs_f64() * 1e3;
    let oracle_length = shortest_path(map).map(|p| p.length);
    let success = trace.outcome == Outcome::Success;
    let suboptimality = match (success, oracle_length) {
        (true, Some(o)) => Some(trace.path_length / o),
        _ => None,
    };
    let metrics = RunMetrics {
        success,
        steps: trace.positions.len() - 1,
        sweeps: trace.sweep_count,
        path_length: trace.path_length,
        oracle_length,
        suboptimality,
        wall_time_ms,
    };
    Ok((trace, metrics))
}
