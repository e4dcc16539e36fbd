use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::{evaluate, load_map_file, HarnessError, MapLoadOptions, PlannerOptions, RunMetrics};

pub const CSV_HEADER: [&str; 8] = [
    "map",
    "success",
    "steps",
    "sweeps",
    "path_length",
    "oracle_length",
    "suboptimality",
    "wall_time_ms",
];

/// One CSV row. `metrics` is `None` when the map could not be loaded or the
/// planner rejected its configuration; `error` then says why.
#[derive(Clone, Debug, PartialEq)]
pub struct BatchRow {
    pub map: String,
    pub metrics: Option<RunMetrics>,
    pub error: Option<String>,
}

impl BatchRow {
    fn record(&self) -> [String; 8] {
        let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
        match &self.metrics {
            Some(m) => [
                self.map.clone(),
                m.success.to_string(),
                m.steps.to_string(),
                m.sweeps.to_string(),
                m.path_length.to_string(),
                opt(m.oracle_length),
                opt(m.suboptimality),
                format!("{:.3}", m.wall_time_ms),
            ],
            None => [
                self.map.clone(),
                "false".into(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
            ],
        }
    }
}

fn is_map_file(path: &Path) -> bool {
    path.is_file()
        && matches!(
            path.extension().and_then(|e| e.to_str()),
            Some("txt") | Some("pgm")
        )
}

/// Runs the planner on every `.txt`/`.pgm` file in `dir`. Maps are evaluated
/// in parallel; rows come back in lexicographic file-name order.
pub fn run_batch(
    dir: &Path,
    load: &MapLoadOptions,
    planner: &PlannerOptions,
) -> Result<Vec<BatchRow>, HarnessError> {
    let io_err = |source| HarnessError::Io { path: dir.display().to_string(), source };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io_err)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io_err)?;
    files.retain(|p| is_map_file(p));
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));

    let rows = files
        .par_iter()
        .map(|path| {
            let name = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            let result = load_map_file(path, load).and_then(|map| {
                let cfg = planner.resolve(&map);
                evaluate(&map, &cfg)
                    .map(|(_, m)| m)
                    .map_err(|e| HarnessError::InvalidArgument(e.to_string()))
            });
            match result {
                Ok(m) => BatchRow { map: name, metrics: Some(m), error: None },
                Err(e) => BatchRow { map: name, metrics: None, error: Some(e.to_string()) },
            }
        })
        .collect();
    Ok(rows)
}

pub fn write_csv<W: Write>(out: W, rows: &[BatchRow]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
