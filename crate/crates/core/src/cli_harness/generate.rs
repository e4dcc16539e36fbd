use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::HarnessError;
use crate::baselines::feasible;
use crate::grid_world::{Cell, GridMap};

pub const MAX_RETRIES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenerateParams {
    pub width: usize,
    pub height: usize,
    pub density: f64,
    pub seed: u64,
    pub count: usize,
}

impl GenerateParams {
    fn validate(&self) -> Result<(), HarnessError> {
        if self.width < 4 || self.height < 4 {
            return Err(HarnessError::InvalidArgument("width and height must be >= 4".into()));
        }
        if !(0.0..1.0).contains(&self.density) {
            return Err(HarnessError::InvalidArgument("density must lie in [0, 1)".into()));
        }
        Ok(())
    }
}

/// Random solvable maps.
///
/// One ChaCha8 stream seeded with `seed` drives the whole batch. For each
/// attempt, interior cells (the one-cell border is always free) are drawn in
/// row-major order as obstacles with probability `density`; then start and
/// goal are drawn uniformly from the free cells, goal from the cells left
/// after removing start. Attempts the oracle cannot solve are discarded.
pub fn generate_maps(params: &GenerateParams) -> Result<Vec<(String, GridMap)>, HarnessError> {
    params.validate()?;
    let GenerateParams { width, height, density, seed, count } = *params;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut maps = Vec::with_capacity(count);

    for index in 0..count {
        let map = (0..MAX_RETRIES)
            .find_map(|_| {
                let mut cells = vec![Cell::Free; width * height];
                for y in 1..height - 1 {
                    for x in 1..width - 1 {
                        if rng.gen::<f64>() < density {
                            cells[y * width + x] = Cell::Obstacle;
                        }
                    }
                }
                let mut free: Vec<usize> = (0..cells.len()).filter(|&i| cells[i] == Cell::Free).collect();
                let start = free.swap_remove(rng.gen_range(0..free.len()));
                let goal = free[rng.gen_range(0..free.len())];
                let at = |i: usize| crate::grid_world::Point::new(i % width, i / width);
                let map = GridMap::new(width, height, cells, at(start), at(goal))
                    .expect("start and goal drawn from distinct free cells");
                feasible(&map).then_some(map)
            })
            .ok_or(HarnessError::GenerationExhausted { index, retries: MAX_RETRIES })?;
        maps.push((format!("gen_{seed}_{index}.txt"), map));
    }
    Ok(maps)
}

/// Writes generated maps as ASCII files into `out_dir`, creating it if needed.
pub fn write_generated(maps: &[(String, GridMap)], out_dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    let io = |path: &Path| {
        let path = path.display().to_string();
        move |source| HarnessError::Io { path, source }
    };
    std::fs::create_dir_all(out_dir).map_err(io(out_dir))?;
    maps.iter()
        .map(|(name, map)| {
            let path = out_dir.join(name);
            std::fs::write(&path, map.to_ascii()).map_err(io(&path))?;
            Ok(path)
        })
        .collect()
}
