//! Binary occupancy world addressed by pixel coordinates.
//!
//! `x` is the column (rightward) and `y` the row (downward). Every map
//! carries a start and a goal pixel, both free and distinct.

mod ascii;
mod line;
mod pgm;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use ascii::load_ascii_map;
pub use line::{line_cells, ray_cast, segment_clear, RayError, RayHit};
pub use pgm::load_pgm_map;

/// A pixel position. Serialized as `[x, y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Point {
    pub x: usize,
    pub y: usize,
}

impl Point {
    pub const fn new(x: usize, y: usize) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        let dx = self.x as f64 - other.x as f64;
        let dy = self.y as f64 - other.y as f64;
        dx.hypot(dy)
    }
}

impl From<[usize; 2]> for Point {
    fn from([x, y]: [usize; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [usize; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Free,
    Obstacle,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("empty map")]
    Empty,
    #[error("row {row} has length {len}, expected {expected}")]
    RaggedRows { row: usize, len: usize, expected: usize },
    #[error("unexpected character {ch:?} at row {row}, column {col}")]
    BadChar { ch: char, row: usize, col: usize },
    #[error("map must contain exactly one start 'S' (found {0})")]
    MissingOrDuplicateStart(usize),
    #[error("map must contain exactly one goal 'G' (found {0})")]
    MissingOrDuplicateGoal(usize),
    #[error("start or goal lies on an obstacle")]
    StartOrGoalOnObstacle,
    #[error("start and goal coincide at {0}")]
    StartEqualsGoal(Point),
    #[error("point {point} outside {width}x{height} map")]
    OutOfBounds { point: Point, width: usize, height: usize },
    #[error("cell count {got} does not match {width}x{height}")]
    CellCount { got: usize, width: usize, height: usize },
    #[error("malformed PGM header: {0}")]
    MalformedHeader(String),
    #[error("PGM pixel data truncated: expected {expected} samples, found {found}")]
    TruncatedData { expected: usize, found: usize },
}

/// Immutable occupancy grid with start and goal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridMap {
    width: usize,
    height: usize,
    cells: Vec<Cell>,
    start: Point,
    goal: Point,
}

impl GridMap {
    /// Builds a map from row-major cells, validating every invariant.
    pub fn new(
        width: usize,
        height: usize,
        cells: Vec<Cell>,
        start: Point,
        goal: Point,
    ) -> Result<Self, MapError> {
        if width == 0 || height == 0 {
            return Err(MapError::Empty);
        }
        if cells.len() != width * height {
            return Err(MapError::CellCount { got: cells.len(), width, height });
        }
        for p in [start, goal] {
            if p.x >= width || p.y >= height {
                return Err(MapError::OutOfBounds { point: p, width, height });
            }
        }
        if start == goal {
            return Err(MapError::StartEqualsGoal(start));
        }
        let map = GridMap { width, height, cells, start, goal };
        if !map.is_free(start) || !map.is_free(goal) {
            return Err(MapError::StartOrGoalOnObstacle);
        }
        Ok(map)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn goal(&self) -> Point {
        self.goal
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn in_bounds(&self, p: Point) -> bool {
        p.x < self.width && p.y < self.height
    }

    /// Signed-coordinate lookup; anything outside the rectangle is `None`.
    pub fn cell_at(&self, x: i64, y: i64) -> Option<Cell> {
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            return None;
        }
        Some(self.cells[y as usize * self.width + x as usize])
    }

    /// Free and in bounds.
    pub fn is_free(&self, p: Point) -> bool {
        self.in_bounds(p) && self.cells[p.y * self.width + p.x] == Cell::Free
    }

    pub fn obstacle_count(&self) -> usize {
        self.cells.iter().filter(|c| **c == Cell::Obstacle).count()
    }

    /// Same world with different endpoints.
    pub fn with_endpoints(&self, start: Point, goal: Point) -> Result<Self, MapError> {
        GridMap::new(self.width, self.height, self.cells.clone(), start, goal)
    }

    /// Serializes to the ASCII map format accepted by [`load_ascii_map`].
    pub fn to_ascii(&self) -> String {
        let mut out = String::with_capacity((self.width + 1) * self.height);
        for y in 0..self.height {
            for x in 0..self.width {
                let p = Point::new(x, y);
                let ch = if p == self.start {
                    'S'
                } else if p == self.goal {
                    'G'
                } else if self.cells[y * self.width + x] == Cell::Obstacle {
                    '#'
                } else {
                    '.'
                };
                out.push(ch);
            }
            out.push('\n');
        }
        out
    }
}
