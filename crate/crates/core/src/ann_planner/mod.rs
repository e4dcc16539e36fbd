//! Sweep-and-select planner driven by an adaptive winner-take-all network.
//!
//! Each iteration sweeps the sensor bar around the robot, encodes every
//! unblocked sensed point as a [`FeatureVector`], scores it against the
//! interlayer weights and moves to the winner. The winner's features then
//! pull the weights toward themselves (instar rule).

mod features;
mod network;
mod plan;

use thiserror::Error;

use crate::grid_world::Point;

pub use features::extract_features;
pub use network::{score, select_winner, train, AdaptiveNetwork, FeatureVector, WeightVector};
pub use plan::{
    plan, Action, CandidateRecord, Outcome, PlanTrace, PlannerConfig, StepRecord,
};

#[derive(Debug, Error, PartialEq)]
pub enum PlanError {
    #[error("invalid planner configuration: {0}")]
    InvalidConfig(String),
    #[error("candidate endpoint {0} coincides with the current position")]
    DegenerateCandidate(Point),
    #[error("candidate at {0} comes from a blocked ray")]
    BlockedCandidate(Point),
    #[error("current position is already the goal")]
    CurrentAtGoal,
    #[error("no candidates to select from")]
    NoCandidates,
}
