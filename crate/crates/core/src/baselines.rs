//! Exact 8-connected shortest-path oracle (uniform-cost search, octile costs).
//!
//! Used to certify that a map is solvable and to measure how far a planner
//! path is from optimal. Diagonal moves between two diagonally adjacent
//! obstacles are allowed, matching [`segment_clear`](crate::grid_world::segment_clear).

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::grid_world::{GridMap, Point};

/// Expansion order: E, SE, S, SW, W, NW, N, NE (y grows downward).
pub const NEIGHBOR_ORDER: [(i64, i64); 8] =
    [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OraclePath {
    pub cells: Vec<Point>,
    pub length: f64,
}

#[derive(Clone, Copy, PartialEq)]
struct Frontier {
    cost: f64,
    seq: u64,
    idx: usize,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    // Min-heap on cost, then insertion order.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn shortest_path(map: &GridMap) -> Option<OraclePath> {
    let (w, h) = (map.width(), map.height());
    let index = |p: Point| p.y * w + p.x;
    let start = index(map.start());
    let goal = index(map.goal());

    let mut dist = vec![f64::INFINITY; w * h];
    let mut parent = vec![usize::MAX; w * h];
    let mut closed = vec![false; w * h];
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;

    dist[start] = 0.0;
    heap.push(Frontier { cost: 0.0, seq, idx: start });

    while let Some(Frontier { cost, idx, .. }) = heap.pop() {
        if closed[idx] {
            continue;
        }
        closed[idx] = true;
        if idx == goal {
            break;
        }
        let (x, y) = ((idx % w) as i64, (idx / w) as i64);
        for (dx, dy) in NEIGHBOR_ORDER {
            let (nx, ny) = (x + dx, y + dy);
            if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                continue;
            }
            let n = Point::new(nx as usize, ny as usize);
            let ni = index(n);
            if closed[ni] || !map.is_free(n) {
                continue;
            }
            let step = if dx != 0 && dy != 0 { SQRT_2 } else { 1.0 };
            let next = cost + step;
            if next < dist[ni] {
                dist[ni] = next;
                parent[ni] = idx;
                seq += 1;
                heap.push(Frontier { cost: next, seq, idx: ni });
            }
        }
    }

    if !closed[goal] {
        return None;
    }
    let mut cells = vec![map.goal()];
    let mut at = goal;
    while at != start {
        at = parent[at];
        cells.push(Point::new(at % w, at / w));
    }
    cells.reverse();
    Some(OraclePath { cells, length: dist[goal] })
}

pub fn feasible(map: &GridMap) -> bool {
    shortest_path(map).is_some()
}

/// Octile length of an 8-connected cell sequence.
pub fn octile_length(cells: &[Point]) -> f64 {
    cells
        .windows(2)
        .map(|w| {
            let dx = w[0].x.abs_diff(w[1].x);
            let dy = w[0].y.abs_diff(w[1].y);
            let diag = dx.min(dy) as f64;
            let straight = (dx.max(dy) - dx.min(dy)) as f64;
            diag * SQRT_2 + straight
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_world::load_ascii_map;

    #[test]
    fn two_diagonals() {
        let map = load_ascii_map("S..\n...\n..G").unwrap();
        let path = shortest_path(&map).unwrap();
        assert!((path.length - 2.0 * SQRT_2).abs() < 1e-12);
        assert_eq!(path.cells, vec![Point::new(0, 0), Point::new(1, 1), Point::new(2, 2)]);
    }

    #[test]
    fn walled_off() {
        let map = load_ascii_map("S#G").unwrap();
        assert_eq!(shortest_path(&map), None);
        assert!(!feasible(&map));
    }

    #[test]
    fn sealed_goal() {
        let map = load_ascii_map("S....\n...##\n...#G").unwrap();
        assert!(!feasible(&map));
    }

    #[test]
    fn corner_squeeze_allowed() {
        let map = load_ascii_map("S#\n#G").unwrap();
        assert!((shortest_path(&map).unwrap().length - SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn wall_with_gap() {
        // Column 2 walled except row 3.
        let map = load_ascii_map("S.#.\n..#.\n..#G\n....").unwrap();
        let path = shortest_path(&map).unwrap();
        // (0,0)->(1,1)->(1,2)->(2,3)->(3,2): √2 + 1 + √2 + √2
        assert!((path.length - (1.0 + 3.0 * SQRT_2)).abs() < 1e-12);
        assert!((octile_length(&path.cells) - path.length).abs() < 1e-12);
    }

    #[test]
    fn deterministic_tie_break() {
        let map = load_ascii_map("S...\n....\n...G").unwrap();
        let a = shortest_path(&map).unwrap();
        let b = shortest_path(&map).unwrap();
        assert_eq!(a, b);
    }
}
