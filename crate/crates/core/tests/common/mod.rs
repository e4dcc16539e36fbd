//! Independent oracles and trace checkers shared by the integration tests.
//! Nothing here calls into the planner's geometry or search code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::f64::consts::SQRT_2;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sweep_planner::ann_planner::{score, Action, PlanTrace};
use sweep_planner::grid_world::{load_ascii_map, Cell, GridMap, Point};

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// All `.txt` maps in `fixtures/<sub>`, sorted by file name.
pub fn load_fixtures(sub: &str) -> Vec<(String, GridMap)> {
    let dir = fixtures_dir().join(sub);
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".txt"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|n| {
            let text = std::fs::read_to_string(dir.join(&n)).unwrap();
            let map = load_ascii_map(&text).unwrap_or_else(|e| panic!("{n}: {e}"));
            (n, map)
        })
        .collect()
}

pub fn empty_map(w: usize, h: usize, start: Point, goal: Point) -> GridMap {
    GridMap::new(w, h, vec![Cell::Free; w * h], start, goal).unwrap()
}

/// Closed-form Bresenham cells from `a` to `b`, both included: iterate the
/// major axis from the lexicographically smaller endpoint; the minor offset
/// at step i is ceil((2·i·m − n) / 2n), i.e. exact rounding with halves going
/// back toward the smaller endpoint.
pub fn oracle_line(a: (i64, i64), b: (i64, i64)) -> Vec<(i64, i64)> {
    let (s, t, flip) = if a <= b { (a, b, false) } else { (b, a, true) };
    let (dx, dy) = (t.0 - s.0, t.1 - s.1);
    let n = dx.abs().max(dy.abs());
    let mut cells = Vec::new();
    if n == 0 {
        return vec![s];
    }
    let ceil_div = |num: i64, den: i64| -((-num).div_euclid(den));
    for i in 0..=n {
        if dx.abs() >= dy.abs() {
            let off = ceil_div(2 * i * dy.abs() - n, 2 * n);
            cells.push((s.0 + dx.signum() * i, s.1 + dy.signum() * off));
        } else {
            let off = ceil_div(2 * i * dx.abs() - n, 2 * n);
            cells.push((s.0 + dx.signum() * off, s.1 + dy.signum() * i));
        }
    }
    if flip {
        cells.reverse();
    }
    cells
}

fn free(map: &GridMap, x: i64, y: i64) -> bool {
    map.cell_at(x, y) == Some(Cell::Free)
}

const KING: [(i64, i64); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];

/// Minimum octile cost over all simple 8-connected free paths, by
/// exhaustive depth-first enumeration (branches already worse than the best
/// complete path are cut).
pub fn brute_force_shortest(map: &GridMap) -> Option<f64> {
    let w = map.width();
    let mut on_path = vec![false; w * map.height()];
    let mut best = f64::INFINITY;
    let start = (map.start().x as i64, map.start().y as i64);
    let goal = (map.goal().x as i64, map.goal().y as i64);

    fn dfs(
        map: &GridMap,
        at: (i64, i64),
        goal: (i64, i64),
        cost: f64,
        on_path: &mut [bool],
        best: &mut f64,
    ) {
        if cost >= *best - 1e-12 {
            return;
        }
        if at == goal {
            *best = cost;
            return;
        }
        let w = map.width() as i64;
        for (dx, dy) in KING {
            let (nx, ny) = (at.0 + dx, at.1 + dy);
            if !free(map, nx, ny) || on_path[(ny * w + nx) as usize] {
                continue;
            }
            on_path[(ny * w + nx) as usize] = true;
            let step = if dx != 0 && dy != 0 { SQRT_2 } else { 1.0 };
            dfs(map, (nx, ny), goal, cost + step, on_path, best);
            on_path[(ny * w + nx) as usize] = false;
        }
    }

    on_path[start.1 as usize * w + start.0 as usize] = true;
    dfs(map, start, goal, 0.0, &mut on_path, &mut best);
    best.is_finite().then_some(best)
}

/// Plain breadth-first flood fill over 8-neighbours.
pub fn flood_fill_reachable(map: &GridMap) -> bool {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let s = (map.start().x as i64, map.start().y as i64);
    seen.insert(s);
    queue.push_back(s);
    while let Some((x, y)) = queue.pop_front() {
        if (x as usize, y as usize) == (map.goal().x, map.goal().y) {
            return true;
        }
        for (dx, dy) in KING {
            let n = (x + dx, y + dy);
            if free(map, n.0, n.1) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    false
}

pub fn random_map(rng: &mut ChaCha8Rng, w: usize, h: usize, density: f64) -> Option<GridMap> {
    let cells: Vec<Cell> = (0..w * h)
        .map(|_| if rng.gen::<f64>() < density { Cell::Obstacle } else { Cell::Free })
        .collect();
    let free: Vec<usize> = (0..w * h).filter(|&i| cells[i] == Cell::Free).collect();
    if free.len() < 2 {
        return None;
    }
    let s = free[rng.gen_range(0..free.len())];
    let mut g = s;
    while g == s {
        g = free[rng.gen_range(0..free.len())];
    }
    let at = |i: usize| Point::new(i % w, i / w);
    Some(GridMap::new(w, h, cells, at(s), at(g)).unwrap())
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every position free; consecutive positions joined by an all-free line
/// no longer than `x + √2/2`.
pub fn check_safety(map: &GridMap, trace: &PlanTrace, x: f64) -> Result<(), String> {
    for p in &trace.positions {
        if !map.is_free(*p) {
            return Err(format!("position {p} not free"));
        }
    }
    for pair in trace.positions.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let line = oracle_line((a.x as i64, a.y as i64), (b.x as i64, b.y as i64));
        if !line.iter().all(|&(cx, cy)| free(map, cx, cy)) {
            return Err(format!("segment {a} -> {b} crosses an obstacle"));
        }
        if a.distance(b) > x + 0.5 * SQRT_2 + 1e-12 {
            return Err(format!("segment {a} -> {b} longer than x"));
        }
    }
    Ok(())
}

/// Each move's recorded winner is the first maximum of the scores, which in
/// turn equal W·f recomputed from the recorded features and the weights
/// before the move.
pub fn check_winner_argmax(trace: &PlanTrace, w0: sweep_planner::ann_planner::WeightVector) -> Result<(), String> {
    let mut w = w0;
    for (k, step) in trace.steps.iter().enumerate() {
        if step.action == Action::Move {
            let recomputed: Vec<f64> = step.candidates.iter().map(|c| score(&w, &c.features)).collect();
            if recomputed != step.scores {
                return Err(format!("step {k}: scores differ from W·f"));
            }
            let mut best = 0;
            for (i, s) in step.scores.iter().enumerate() {
                if *s > step.scores[best] {
                    best = i;
                }
            }
            if step.chosen_index != Some(best) {
                return Err(format!("step {k}: chose {:?}, argmax {best}", step.chosen_index));
            }
            if step.chosen_point != Some(step.candidates[best].point) {
                return Err(format!("step {k}: chosen point is not the winning candidate"));
            }
        }
        w = step.weights_after;
    }
    Ok(())
}

/// Replays virtual blocks from the trace and checks that no sweep decision
/// happens twice in the same (position, virtual blocks, candidate set) state.
pub fn check_no_repeated_state(trace: &PlanTrace) -> Result<(), String> {
    let mut blocks: BTreeSet<Point> = BTreeSet::new();
    let mut seen: HashSet<(Point, Vec<Point>, Vec<Point>)> = HashSet::new();
    for (k, step) in trace.steps.iter().enumerate() {
        match step.action {
            Action::Move => {
                let mut cands: Vec<Point> = step.candidates.iter().map(|c| c.point).collect();
                cands.sort();
                let key = (step.origin, blocks.iter().copied().collect(), cands);
                if !seen.insert(key) {
                    return Err(format!("step {k}: state at {} repeated", step.origin));
                }
            }
            Action::Backtrack => {
                if let Some(b) = step.virtual_block {
                    blocks.insert(b);
                }
            }
            _ => {}
        }
    }
    Ok(())
}

/// `(angle, candidate cell, score)` per candidate.
pub type ScoredStep = Vec<(f64, (i64, i64), f64)>;

/// Scores for the hand-traced 5×5 run, computed from scratch: eight rays of
/// length 1 at 45° steps, the decided four-component encoding and the instar
/// update, with nothing borrowed from the library.
pub fn hand_trace_scores() -> Vec<ScoredStep> {
    let goal = (4.0f64, 2.0f64);
    let mut w = [1.0, 1.0, 0.25, 0.5];
    let eta = 0.2;
    let mut out = Vec::new();
    for px in 0..3i64 {
        let cur = (px as f64, 2.0);
        let mut step = Vec::new();
        for k in 0..8 {
            let a = (k as f64 * 45.0).to_radians();
            let (dx, dy) = (a.cos().round() as i64, a.sin().round() as i64);
            let (cx, cy) = (px + dx, 2 + dy);
            // Off-map rays are blocked.
            if !(0..5).contains(&cx) || !(0..5).contains(&cy) {
                continue;
            }
            // Cells already occupied are not offered again.
            if cy == 2 && cx < px {
                continue;
            }
            let d_cur = ((goal.0 - cur.0).powi(2) + (goal.1 - cur.1).powi(2)).sqrt();
            let d_cand = ((goal.0 - cx as f64).powi(2) + (goal.1 - cy as f64).powi(2)).sqrt();
            let f1 = (d_cur - d_cand).clamp(-1.0, 1.0);
            let (mx, my) = (dx as f64, dy as f64);
            let (gx, gy) = (goal.0 - cur.0, goal.1 - cur.1);
            let f2 = (mx * gx + my * gy) / ((mx * mx + my * my).sqrt() * (gx * gx + gy * gy).sqrt());
            let f = [f1, f2, 1.0, 1.0];
            let s: f64 = (0..4).map(|i| w[i] * f[i]).sum();
            step.push((k as f64 * 45.0, (cx, cy), s));
        }
        let best = step.iter().map(|t| t.2).fold(f64::NEG_INFINITY, f64::max);
        let winner = step.iter().find(|t| t.2 == best).unwrap();
        // f of the winner is (1, 1, 1, 1) at every step.
        assert_eq!(winner.1, (px + 1, 2));
        for wi in w.iter_mut() {
            *wi += eta * (1.0 - *wi);
        }
        out.push(step);
    }
    out
}
