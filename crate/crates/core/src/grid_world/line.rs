use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Cell, GridMap, Point};

/// Result of casting one ray from a free origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayHit {
    /// Last free in-bounds cell reached; the origin if the first step was blocked.
    pub endpoint: Point,
    pub clearance: f64,
    pub blocked: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RayError {
    #[error("ray origin {0} is out of bounds or on an obstacle")]
    OriginInvalid(Point),
}

/// Cells of the integer Bresenham line from `a` to `b`, both endpoints
/// included, in order from `a`.
///
/// The iteration always runs from the lexicographically smaller endpoint, so
/// `line_cells(b, a)` is exactly `line_cells(a, b)` reversed.
pub fn line_cells(a: (i64, i64), b: (i64, i64)) -> Vec<(i64, i64)> {
    if a > b {
        let mut cells = bresenham(b, a);
        cells.reverse();
        cells
    } else {
        bresenham(a, b)
    }
}

fn bresenham((x0, y0): (i64, i64), (x1, y1): (i64, i64)) -> Vec<(i64, i64)> {
    let dx = (x1 - x0).abs();
    let dy = (y1 - y0).abs();
    let sx = if x0 < x1 { 1 } else { -1 };
    let sy = if y0 < y1 { 1 } else { -1 };
    let mut err = dx - dy;
    let (mut x, mut y) = (x0, y0);
    let mut cells = Vec::with_capacity((dx.max(dy) + 1) as usize);
    loop {
        cells.push((x, y));
        if x == x1 && y == y1 {
            return cells;
        }
        let e2 = 2 * err;
        if e2 > -dy {
            err -= dy;
            x += sx;
        }
        if e2 < dx {
            err += dx;
            y += sy;
        }
    }
}

/// Casts a ray of length `max_dist` at `angle_deg` (0° = +x, 90° = +y, i.e.
/// down-screen). The world edge blocks like an obstacle.
pub fn ray_cast(
    map: &GridMap,
    origin: Point,
    angle_deg: f64,
    max_dist: f64,
) -> Result<RayHit, RayError> {
    if !map.is_free(origin) {
        return Err(RayError::OriginInvalid(origin));
    }
    let theta = angle_deg.to_radians();
    let (ox, oy) = (origin.x as i64, origin.y as i64);
    let target = (
        ox + (max_dist * theta.cos()).round() as i64,
        oy + (max_dist * theta.sin()).round() as i64,
    );

    let mut endpoint = origin;
    for (x, y) in line_cells((ox, oy), target).into_iter().skip(1) {
        match map.cell_at(x, y) {
            Some(Cell::Free) => endpoint = Point::new(x as usize, y as usize),
            _ => {
                let dist = ((x - ox) as f64).hypot((y - oy) as f64);
                return Ok(RayHit { endpoint, clearance: dist.min(max_dist), blocked: true });
            }
        }
    }
    Ok(RayHit { endpoint, clearance: max_dist, blocked: false })
}

/// True iff every cell on the line from `a` to `b` (both included) is free.
/// Diagonal squeezes between two obstacles are allowed; only line cells count.
pub fn segment_clear(map: &GridMap, a: Point, b: Point) -> bool {
    line_cells((a.x as i64, a.y as i64), (b.x as i64, b.y as i64))
        .into_iter()
        .all(|(x, y)| map.cell_at(x, y) == Some(Cell::Free))
}
