//! File formats and command implementations behind the `sweep-planner` binary.

mod batch;
mod generate;
mod metrics;
mod render;
mod trace;

use std::path::Path;

use thiserror::Error;

use crate::ann_planner::{PlannerConfig, WeightVector};
use crate::grid_world::{load_ascii_map, load_pgm_map, GridMap, MapError, Point};

pub use batch::{run_batch, write_csv, BatchRow, CSV_HEADER};
pub use generate::{generate_maps, write_generated, GenerateParams};
pub use metrics::{evaluate, RunMetrics};
pub use render::{render_ppm, render_trace, Rgb, GOAL, OBSTACLE, PATH, START, FREE};
pub use trace::{MapInfo, TraceDocument, TraceMetrics, TRACE_VERSION};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Map { path: String, source: MapError },
    #[error("PGM map {0} needs --start and --goal")]
    PgmNeedsEndpoints(String),
    #[error("trace does not match map: {0}")]
    TraceMismatch(String),
    #[error("malformed trace JSON: {0}")]
    TraceJson(#[from] serde_json::Error),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("map generation exhausted {retries} retries for map {index}")]
    GenerationExhausted { index: usize, retries: usize },
    #[error("CSV output failed: {0}")]
    Csv(#[from] csv::Error),
}

/// How to interpret map files on disk.
#[derive(Clone, Copy, Debug, Default)]
pub struct MapLoadOptions {
    pub pgm_threshold: u8,
    pub start: Option<Point>,
    pub goal: Option<Point>,
}

/// Loads ASCII or PGM, deciding by the file's magic number. Explicit
/// start/goal override the ones embedded in an ASCII map.
pub fn load_map_file(path: &Path, opts: &MapLoadOptions) -> Result<GridMap, HarnessError> {
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|source| HarnessError::Io { path: shown.clone(), source })?;
    let map_err = |source| HarnessError::Map { path: shown.clone(), source };
    if bytes.starts_with(b"P2") || bytes.starts_with(b"P5") {
        let (Some(start), Some(goal)) = (opts.start, opts.goal) else {
            return Err(HarnessError::PgmNeedsEndpoints(shown));
        };
        return load_pgm_map(&bytes, opts.pgm_threshold, start, goal).map_err(map_err);
    }
    let text = String::from_utf8_lossy(&bytes);
    let map = load_ascii_map(&text).map_err(map_err)?;
    match (opts.start, opts.goal) {
        (None, None) => Ok(map),
        (s, g) => map
            .with_endpoints(s.unwrap_or(map.start()), g.unwrap_or(map.goal()))
            .map_err(map_err),
    }
}

/// Planner parameters as given on the command line; anything unset falls
/// back to [`PlannerConfig::for_map`].
#[derive(Clone, Copy, Debug, Default)]
pub struct PlannerOptions {
    pub range: Option<f64>,
    pub delta_alpha: Option<f64>,
    pub eta: Option<f64>,
    pub w0: Option<WeightVector>,
    pub max_steps: Option<usize>,
    pub no_backtrack: bool,
    pub sector: Option<(f64, f64)>,
}

impl PlannerOptions {
    pub fn resolve(&self, map: &GridMap) -> PlannerConfig {
        let mut cfg = PlannerConfig::for_map(map);
        if let Some(r) = self.range {
            cfg.sweep.range_x = r;
        }
        if let Some(d) = self.delta_alpha {
            cfg.sweep.delta_alpha = d;
        }
        if let Some((lo, hi)) = self.sector {
            cfg.sweep.sector_lo = lo;
            cfg.sweep.sector_hi = hi;
        }
        if let Some(eta) = self.eta {
            cfg.eta = eta;
        }
        if let Some(w) = self.w0 {
            cfg.initial_weights = w;
        }
        if let Some(m) = self.max_steps {
            cfg.max_steps = m;
        }
        cfg.backtrack_enabled = !self.no_backtrack;
        cfg
    }

    /// Checks the parts that do not depend on a map.
    pub fn validate(&self) -> Result<(), HarnessError> {
        // Any map works here; only map-independent fields can fail.
        let probe = GridMap::new(2, 1, vec![crate::grid_world::Cell::Free; 2], Point::new(0, 0), Point::new(1, 0))
            .expect("static probe map is valid");
        self.resolve(&probe)
            .validate()
            .map_err(|e| HarnessError::InvalidArgument(e.to_string()))
    }
}

/// `"x,y"` → point.
pub fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    let x = x.trim().parse().map_err(|_| format!("bad x in {s:?}"))?;
    let y = y.trim().parse().map_err(|_| format!("bad y in {s:?}"))?;
    Ok(Point::new(x, y))
}

/// `"w1,w2,w3,w4"` → weights.
pub fn parse_weights(s: &str) -> Result<WeightVector, String> {
    let vals: Vec<f64> = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| format!("bad weight {v:?}")))
        .collect::<Result<_, _>>()?;
    let arr: [f64; 4] = vals
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected 4 weights, got {}", v.len()))?;
    Ok(WeightVector(arr))
}

/// `"lo:hi"` → sector bounds in degrees.
pub fn parse_sector(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo = lo.trim().parse().map_err(|_| format!("bad sector start in {s:?}"))?;
    let hi = hi.trim().parse().map_err(|_| format!("bad sector end in {s:?}"))?;
    Ok((lo, hi))
}
