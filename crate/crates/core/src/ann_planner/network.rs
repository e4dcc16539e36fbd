use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::PlanError;
use crate::grid_world::Point;
use crate::sensor::SensedPoint;

/// Input layer encoding of one candidate. Serialized as a 4-element array.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct FeatureVector {
    /// Distance gained toward the goal, in units of the slide distance. [-1, 1]
    pub goal_progress: f64,
    /// Cosine between the move and the goal bearing. [-1, 1]
    pub heading_alignment: f64,
    /// Ray clearance over slide distance. [0, 1]
    pub clearance_norm: f64,
    /// `1 / (1 + visits)`. (0, 1]
    pub novelty: f64,
}

impl FeatureVector {
    pub const fn new(goal_progress: f64, heading_alignment: f64, clearance_norm: f64, novelty: f64) -> Self {
        FeatureVector { goal_progress, heading_alignment, clearance_norm, novelty }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.goal_progress, self.heading_alignment, self.clearance_norm, self.novelty]
    }
}

impl From<[f64; 4]> for FeatureVector {
    fn from([a, b, c, d]: [f64; 4]) -> Self {
        FeatureVector::new(a, b, c, d)
    }
}

impl From<FeatureVector> for [f64; 4] {
    fn from(f: FeatureVector) -> Self {
        f.as_array()
    }
}

/// Interlayer weights, one per feature component.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub [f64; 4]);

impl WeightVector {
    /// Goal-seeking prior: progress and heading dominate.
    pub const DEFAULT: WeightVector = WeightVector([1.0, 1.0, 0.25, 0.5]);

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|w| w.is_finite())
    }

    pub fn scaled(&self, c: f64) -> WeightVector {
        WeightVector(self.0.map(|w| w * c))
    }
}

impl Default for WeightVector {
    fn default() -> Self {
        WeightVector::DEFAULT
    }
}

/// Winner-take-all activation `W · f`.
pub fn score(w: &WeightVector, f: &FeatureVector) -> f64 {
    w.0.iter().zip(f.as_array()).map(|(w, f)| w * f).sum()
}

/// Index of the highest activation; the earliest entry (smallest sweep
/// angle) wins ties.
pub fn select_winner(w: &WeightVector, feats: &[(SensedPoint, FeatureVector)]) -> Result<usize, PlanError> {
    let mut best: Option<(usize, f64)> = None;
    for (i, (_, f)) in feats.iter().enumerate() {
        let s = score(w, f);
        match best {
            Some((_, b)) if s <= b => {}
            _ => best = Some((i, s)),
        }
    }
    best.map(|(i, _)| i).ok_or(PlanError::NoCandidates)
}

/// Instar update `W' = W + η (f − W)`.
pub fn train(w: &WeightVector, f_winner: &FeatureVector, eta: f64) -> WeightVector {
    debug_assert!(eta > 0.0 && eta < 1.0);
    let f = f_winner.as_array();
    let mut out = w.0;
    for (o, fi) in out.iter_mut().zip(f) {
        *o += eta * (fi - *o);
    }
    WeightVector(out)
}

/// Per-run adaptive state.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptiveNetwork {
    pub weights: WeightVector,
    pub eta: f64,
    pub visit_counts: BTreeMap<Point, u32>,
    /// Dead ends discovered by backtracking. Never holds start or goal.
    pub virtual_blocks: BTreeSet<Point>,
}

impl AdaptiveNetwork {
    pub fn new(weights: WeightVector, eta: f64) -> Self {
        AdaptiveNetwork {
            weights,
            eta,
            visit_counts: BTreeMap::new(),
            virtual_blocks: BTreeSet::new(),
        }
    }

    pub fn visits(&self, p: Point) -> u32 {
        self.visit_counts.get(&p).copied().unwrap_or(0)
    }

    /// Adapts W toward the winner and counts the visit.
    pub fn reinforce(&mut self, winner: Point, f: &FeatureVector) {
        self.weights = train(&self.weights, f, self.eta);
        *self.visit_counts.entry(winner).or_insert(0) += 1;
    }
}
