use serde::{Deserialize, Serialize};

use super::RunMetrics;
use crate::ann_planner::{Outcome, PlanTrace, PlannerConfig, StepRecord};
use crate::grid_world::{GridMap, Point};

pub const TRACE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapInfo {
    pub width: usize,
    pub height: usize,
    pub start: Point,
    pub goal: Point,
}

impl MapInfo {
    pub fn of(map: &GridMap) -> Self {
        MapInfo { width: map.width(), height: map.height(), start: map.start(), goal: map.goal() }
    }
}

/// Run summary stored in a trace. Wall time is left out so that identical
/// runs serialize to identical bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceMetrics {
    pub success: bool,
    pub steps: usize,
    pub sweeps: usize,
    pub path_length: f64,
    pub oracle_length: Option<f64>,
    pub suboptimality: Option<f64>,
}

impl From<&RunMetrics> for TraceMetrics {
    fn from(m: &RunMetrics) -> Self {
        TraceMetrics {
            success: m.success,
            steps: m.steps,
            sweeps: m.sweeps,
            path_length: m.path_length,
            oracle_length: m.oracle_length,
            suboptimality: m.suboptimality,
        }
    }
}

/// Self-contained record of one planning run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub version: u32,
    pub map: MapInfo,
    pub config: PlannerConfig,
    pub positions: Vec<Point>,
    pub steps: Vec<StepRecord>,
    pub outcome: Outcome,
    pub sweep_count: usize,
    pub path_length: f64,
    pub metrics: TraceMetrics,
}

impl TraceDocument {
    pub fn new(map: &GridMap, config: &PlannerConfig, trace: &PlanTrace, metrics: &RunMetrics) -> Self {
        TraceDocument {
            version: TRACE_VERSION,
            map: MapInfo::of(map),
            config: *config,
            positions: trace.positions.clone(),
            steps: trace.steps.clone(),
            outcome: trace.outcome,
            sweep_count: trace.sweep_count,
            path_length: trace.path_length,
            metrics: metrics.into(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("trace is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn plan_trace(&self) -> PlanTrace {
        PlanTrace {
            positions: self.positions.clone(),
            steps: self.steps.clone(),
            outcome: self.outcome,
            sweep_count: self.sweep_count,
            path_length: self.path_length,
        }
    }
}
