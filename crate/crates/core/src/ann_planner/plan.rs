use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{
    extract_features, score, select_winner, AdaptiveNetwork, FeatureVector, PlanError, WeightVector,
};
use crate::grid_world::{line_cells, segment_clear, GridMap, Point};
use crate::sensor::{candidates, sweep, SensedPoint, SweepConfig};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlannerConfig {
    pub sweep: SweepConfig,
    pub eta: f64,
    pub initial_weights: WeightVector,
    pub max_steps: usize,
    pub backtrack_enabled: bool,
}

impl PlannerConfig {
    /// Default parameters, with the move budget `10 · (width + height)`.
    pub fn for_map(map: &GridMap) -> Self {
        PlannerConfig {
            sweep: SweepConfig::default(),
            eta: 0.2,
            initial_weights: WeightVector::DEFAULT,
            max_steps: 10 * (map.width() + map.height()),
            backtrack_enabled: true,
        }
    }

    pub fn validate(&self) -> Result<(), PlanError> {
        self.sweep
            .validate()
            .map_err(|e| PlanError::InvalidConfig(e.to_string()))?;
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return Err(PlanError::InvalidConfig(format!("eta {} must lie in (0, 1)", self.eta)));
        }
        if !self.initial_weights.is_finite() {
            return Err(PlanError::InvalidConfig("initial weights must be finite".into()));
        }
        if self.max_steps == 0 {
            return Err(PlanError::InvalidConfig("max_steps must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Move,
    Backtrack,
    SnapToGoal,
    ShrinkRange,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Success,
    NoPathFound,
    Trapped,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub angle_deg: f64,
    pub point: Point,
    pub features: FeatureVector,
}

/// One recorded planner action.
///
/// * `move`: a sweep at `origin` with range `range` produced `candidates`;
///   `chosen_index` won and `weights_after` is W after training.
/// * `snap_to_goal`: the goal was within `range` with a clear segment.
/// * `shrink_range`: the previous sweep at `origin` had no candidates and the
///   next one is taken at `range`.
/// * `backtrack`: no candidates at any range; `origin` is abandoned (and
///   recorded in `virtual_block` unless it is the start) and the robot
///   returns to `chosen_point`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub action: Action,
    pub origin: Point,
    pub range: f64,
    pub chosen_angle: Option<f64>,
    pub chosen_point: Option<Point>,
    pub chosen_index: Option<usize>,
    pub candidate_count: usize,
    pub candidates: Vec<CandidateRecord>,
    pub scores: Vec<f64>,
    pub weights_after: WeightVector,
    pub virtual_block: Option<Point>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanTrace {
    pub positions: Vec<Point>,
    pub steps: Vec<StepRecord>,
    pub outcome: Outcome,
    pub sweep_count: usize,
    pub path_length: f64,
}

impl PlanTrace {
    pub fn moves(&self) -> usize {
        self.steps.iter().filter(|s| s.action == Action::Move).count()
    }
}

/// Runs the sweep / select / move loop from `map.start()` until the goal is
/// reached, the robot is trapped, or `cfg.max_steps` moves are spent.
///
/// Loop control beyond the bare sweep-and-select cycle:
///
/// * Goal snap: when the goal is within the slide distance and the segment
///   to it is clear, the robot moves onto it and the run succeeds.
/// * A cell the robot has already occupied is never a candidate again. The
///   only way back to a cell is a backtrack, which always adds a virtual
///   block, so no (position, virtual blocks) state is swept twice.
/// * With no candidates the range halves down to 1; after that the current
///   cell becomes a virtual block and the robot steps back along its path
///   stack. Virtual blocks exclude any candidate whose segment crosses them.
///
/// Since a range-1 sweep reaches all eight neighbours, the search visits
/// every cell 8-connected to the start before reporting `Trapped`.
pub fn plan(map: &GridMap, cfg: &PlannerConfig) -> Result<PlanTrace, PlanError> {
    cfg.validate()?;
    let start = map.start();
    let goal = map.goal();
    let x = cfg.sweep.range_x;

    let mut net = AdaptiveNetwork::new(cfg.initial_weights, cfg.eta);
    let mut positions = vec![start];
    let mut stack = vec![start];
    let mut visited: BTreeSet<Point> = BTreeSet::from([start]);
    let mut steps = Vec::new();
    let mut sweep_count = 0usize;
    let mut moves = 0usize;
    let mut current = start;

    let outcome = loop {
        if current.distance(goal) <= x && segment_clear(map, current, goal) {
            steps.push(StepRecord {
                action: Action::SnapToGoal,
                origin: current,
                range: x,
                chosen_angle: Some(bearing_deg(current, goal)),
                chosen_point: Some(goal),
                chosen_index: None,
                candidate_count: 0,
                candidates: Vec::new(),
                scores: Vec::new(),
                weights_after: net.weights,
                virtual_block: None,
            });
            positions.push(goal);
            break Outcome::Success;
        }
        if moves >= cfg.max_steps {
            break Outcome::NoPathFound;
        }

        let mut range = x;
        let found = loop {
            let sensed = sweep(map, current, &cfg.sweep.with_range(range))
                .map_err(|e| PlanError::InvalidConfig(e.to_string()))?;
            sweep_count += 1;
            let cands: Vec<SensedPoint> = candidates(&sensed, current)
                .into_iter()
                .filter(|c| !visited.contains(&c.endpoint))
                .filter(|c| !crosses_any(current, c.endpoint, &net.virtual_blocks))
                .collect();
            if !cands.is_empty() {
                break Some((range, cands));
            }
            if range <= 1.0 {
                break None;
            }
            range = (range / 2.0).max(1.0);
            steps.push(StepRecord {
                action: Action::ShrinkRange,
                origin: current,
                range,
                chosen_angle: None,
                chosen_point: None,
                chosen_index: None,
                candidate_count: 0,
                candidates: Vec::new(),
                scores: Vec::new(),
                weights_after: net.weights,
                virtual_block: None,
            });
        };

        match found {
            Some((range, cands)) => {
                let feats = cands
                    .iter()
                    .map(|c| {
                        extract_features(current, c, goal, range, &net.visit_counts).map(|f| (*c, f))
                    })
                    .collect::<Result<Vec<(SensedPoint, FeatureVector)>, _>>()?;
                let scores: Vec<f64> = feats.iter().map(|(_, f)| score(&net.weights, f)).collect();
                let idx = select_winner(&net.weights, &feats)?;
                let (winner, f_winner) = feats[idx];
                net.reinforce(winner.endpoint, &f_winner);
                moves += 1;

                steps.push(StepRecord {
                    action: Action::Move,
                    origin: current,
                    range,
                    chosen_angle: Some(winner.angle_deg),
                    chosen_point: Some(winner.endpoint),
                    chosen_index: Some(idx),
                    candidate_count: feats.len(),
                    candidates: feats
                        .iter()
                        .map(|(c, f)| CandidateRecord { angle_deg: c.angle_deg, point: c.endpoint, features: *f })
                        .collect(),
                    scores,
                    weights_after: net.weights,
                    virtual_block: None,
                });

                current = winner.endpoint;
                positions.push(current);
                visited.insert(current);
                stack.push(current);
                if current == goal {
                    break Outcome::Success;
                }
            }
            None => {
                if !cfg.backtrack_enabled || stack.len() <= 1 {
                    break Outcome::Trapped;
                }
                let abandoned = stack.pop().expect("stack holds at least two cells");
                // Stack cells are distinct and rooted at start, so only the
                // root can be the start cell.
                let block = (abandoned != start && abandoned != goal).then_some(abandoned);
                if let Some(b) = block {
                    net.virtual_blocks.insert(b);
                }
                let back = *stack.last().expect("stack is non-empty after pop");
                steps.push(StepRecord {
                    action: Action::Backtrack,
                    origin: abandoned,
                    // Shrinking always ends at range 1.
                    range: 1.0,
                    chosen_angle: None,
                    chosen_point: Some(back),
                    chosen_index: None,
                    candidate_count: 0,
                    candidates: Vec::new(),
                    scores: Vec::new(),
                    weights_after: net.weights,
                    virtual_block: block,
                });
                current = back;
                positions.push(current);
            }
        }
    };

    let path_length = positions.windows(2).map(|w| w[0].distance(w[1])).sum();
    Ok(PlanTrace { positions, steps, outcome, sweep_count, path_length })
}

fn crosses_any(from: Point, to: Point, blocks: &BTreeSet<Point>) -> bool {
    if blocks.is_empty() {
        return false;
    }
    line_cells((from.x as i64, from.y as i64), (to.x as i64, to.y as i64))
        .into_iter()
        .any(|(x, y)| blocks.contains(&Point::new(x as usize, y as usize)))
}

/// Direction from `a` to `b` in the sweep frame, in [0, 360).
fn bearing_deg(a: Point, b: Point) -> f64 {
    let dy = b.y as f64 - a.y as f64;
    let dx = b.x as f64 - a.x as f64;
    dy.atan2(dx).to_degrees().rem_euclid(360.0)
}
