//! Rotating-bar sensor: one ray per bar orientation across an angular sector.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid_world::{ray_cast, GridMap, Point};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SensedPoint {
    pub angle_deg: f64,
    pub endpoint: Point,
    pub clearance: f64,
    pub blocked: bool,
}

/// Bar rotation step, slide distance and the swept sector (degrees,
/// half-open `[sector_lo, sector_hi)`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub delta_alpha: f64,
    pub range_x: f64,
    pub sector_lo: f64,
    pub sector_hi: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { delta_alpha: 15.0, range_x: 3.0, sector_lo: 0.0, sector_hi: 360.0 }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SensorError {
    #[error("sweep pose {0} is out of bounds or on an obstacle")]
    PoseInvalid(Point),
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SensorError> {
        let bad = |m: &str| Err(SensorError::InvalidConfig(m.to_string()));
        let all_finite = [self.delta_alpha, self.range_x, self.sector_lo, self.sector_hi]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite {
            return bad("non-finite value");
        }
        if self.delta_alpha <= 0.0 {
            return bad("delta_alpha must be > 0");
        }
        if self.range_x < 1.0 {
            return bad("range must be >= 1");
        }
        if !(self.sector_lo < self.sector_hi && self.sector_hi <= self.sector_lo + 360.0) {
            return bad("sector must satisfy lo < hi <= lo + 360");
        }
        if (self.sector_hi - self.sector_lo) / self.delta_alpha < 1.0 {
            return bad("sector narrower than one delta_alpha step");
        }
        Ok(())
    }

    /// Number of bar orientations in one sweep.
    pub fn ray_count(&self) -> usize {
        ((self.sector_hi - self.sector_lo) / self.delta_alpha).ceil() as usize
    }

    /// Bar orientations in rotation order. Angles are computed as
    /// `lo + k·Δα` rather than accumulated so they do not drift.
    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.ray_count()).map(move |k| self.sector_lo + k as f64 * self.delta_alpha)
    }

    pub fn with_range(&self, range_x: f64) -> SweepConfig {
        SweepConfig { range_x, ..*self }
    }
}

/// One full bar rotation at `pose`.
pub fn sweep(map: &GridMap, pose: Point, cfg: &SweepConfig) -> Result<Vec<SensedPoint>, SensorError> {
    cfg.validate()?;
    if !map.is_free(pose) {
        return Err(SensorError::PoseInvalid(pose));
    }
    let points = cfg
        .angles()
        .map(|angle_deg| {
            // Pose validity was checked above, so the ray cannot fail.
            let hit = ray_cast(map, pose, angle_deg, cfg.range_x)
                .expect("pose validated before sweeping");
            SensedPoint {
                angle_deg,
                endpoint: hit.endpoint,
                clearance: hit.clearance,
                blocked: hit.blocked,
            }
        })
        .collect();
    Ok(points)
}

/// Movement candidates: unblocked rays only, first occurrence of each
/// endpoint cell, never the pose itself.
pub fn candidates(sweep_result: &[SensedPoint], pose: Point) -> Vec<SensedPoint> {
    let mut seen = HashSet::new();
    sweep_result
        .iter()
        .filter(|p| !p.blocked && p.endpoint != pose)
        .filter(|p| seen.insert(p.endpoint))
        .copied()
        .collect()
}
