use std::collections::BTreeMap;

use super::{FeatureVector, PlanError};
use crate::grid_world::Point;
use crate::sensor::SensedPoint;

/// Encodes an unblocked candidate for the network input layer.
///
/// `x` is the slide distance the sweep was taken at; progress and clearance
/// are normalized by it.
pub fn extract_features(
    current: Point,
    cand: &SensedPoint,
    goal: Point,
    x: f64,
    visit_counts: &BTreeMap<Point, u32>,
) -> Result<FeatureVector, PlanError> {
    if cand.blocked {
        return Err(PlanError::BlockedCandidate(cand.endpoint));
    }
    if cand.endpoint == current {
        return Err(PlanError::DegenerateCandidate(current));
    }
    if current == goal {
        return Err(PlanError::CurrentAtGoal);
    }

    let progress = (current.distance(goal) - cand.endpoint.distance(goal)) / x;

    let (mx, my) = offset(current, cand.endpoint);
    let (gx, gy) = offset(current, goal);
    let cosine = (mx * gx + my * gy) / (mx.hypot(my) * gx.hypot(gy));

    let visits = visit_counts.get(&cand.endpoint).copied().unwrap_or(0);

    Ok(FeatureVector {
        goal_progress: progress.clamp(-1.0, 1.0),
        heading_alignment: cosine.clamp(-1.0, 1.0),
        clearance_norm: (cand.clearance / x).clamp(0.0, 1.0),
        novelty: 1.0 / (1.0 + visits as f64),
    })
}

fn offset(from: Point, to: Point) -> (f64, f64) {
    (to.x as f64 - from.x as f64, to.y as f64 - from.y as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cand(x: usize, y: usize, clearance: f64) -> SensedPoint {
        SensedPoint { angle_deg: 0.0, endpoint: Point::new(x, y), clearance, blocked: false }
    }

    #[test]
    fn straight_toward_goal() {
        let f = extract_features(Point::new(0, 0), &cand(3, 0, 3.0), Point::new(10, 0), 3.0, &BTreeMap::new())
            .unwrap();
        assert_eq!(f, FeatureVector::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn straight_away_from_goal() {
        let f = extract_features(Point::new(5, 0), &cand(2, 0, 3.0), Point::new(10, 0), 3.0, &BTreeMap::new())
            .unwrap();
        assert_eq!(f, FeatureVector::new(-1.0, -1.0, 1.0, 1.0));
    }

    #[test]
    fn novelty_counts_visits() {
        let mut visits = BTreeMap::new();
        visits.insert(Point::new(3, 0), 2);
        let f = extract_features(Point::new(0, 0), &cand(3, 0, 3.0), Point::new(10, 0), 3.0, &visits).unwrap();
        assert_eq!(f, FeatureVector::new(1.0, 1.0, 1.0, 1.0 / 3.0));
    }

    #[test]
    fn progress_is_clamped() {
        // Diagonal rounding can overshoot the slide distance.
        let f = extract_features(Point::new(0, 0), &cand(1, 1, 1.0), Point::new(9, 9), 1.0, &BTreeMap::new())
            .unwrap();
        assert_eq!(f.goal_progress, 1.0);
        assert!((f.heading_alignment - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let none = BTreeMap::new();
        let p = Point::new(2, 2);
        assert_eq!(
            extract_features(p, &cand(2, 2, 1.0), Point::new(5, 5), 1.0, &none),
            Err(PlanError::DegenerateCandidate(p))
        );
        let mut blocked = cand(3, 2, 0.5);
        blocked.blocked = true;
        assert_eq!(
            extract_features(p, &blocked, Point::new(5, 5), 1.0, &none),
            Err(PlanError::BlockedCandidate(Point::new(3, 2)))
        );
        assert_eq!(
            extract_features(p, &cand(3, 2, 1.0), p, 1.0, &none),
            Err(PlanError::CurrentAtGoal)
        );
    }
}
