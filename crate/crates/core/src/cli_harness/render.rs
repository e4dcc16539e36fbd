use super::{HarnessError, TraceDocument};
use crate::grid_world::{line_cells, Cell, GridMap, Point};

pub type Rgb = [u8; 3];

pub const FREE: Rgb = [255, 255, 255];
pub const OBSTACLE: Rgb = [0, 0, 0];
pub const PATH: Rgb = [255, 0, 0];
pub const START: Rgb = [0, 200, 0];
pub const GOAL: Rgb = [0, 0, 255];

/// Binary PPM (P6) of the map with the path overlaid, each cell drawn as a
/// `scale`×`scale` block. Path segments use the same line rasterization as
/// collision checks; start and goal are painted last.
pub fn render_ppm(map: &GridMap, positions: &[Point], scale: usize) -> Vec<u8> {
    let (w, h) = (map.width(), map.height());
    let mut colors: Vec<Rgb> = map
        .cells()
        .iter()
        .map(|c| if *c == Cell::Obstacle { OBSTACLE } else { FREE })
        .collect();

    let mut paint = |p: (i64, i64), rgb: Rgb| {
        if p.0 >= 0 && p.1 >= 0 && (p.0 as usize) < w && (p.1 as usize) < h {
            colors[p.1 as usize * w + p.0 as usize] = rgb;
        }
    };
    let as_signed = |p: Point| (p.x as i64, p.y as i64);
    for pair in positions.windows(2) {
        for c in line_cells(as_signed(pair[0]), as_signed(pair[1])) {
            paint(c, PATH);
        }
    }
    if let [only] = positions {
        paint(as_signed(*only), PATH);
    }
    paint(as_signed(map.start()), START);
    paint(as_signed(map.goal()), GOAL);

    let scale = scale.max(1);
    let (pw, ph) = (w * scale, h * scale);
    let header = format!("P6\n{pw} {ph}\n255\n");
    let mut out = Vec::with_capacity(header.len() + pw * ph * 3);
    out.extend_from_slice(header.as_bytes());
    for y in 0..ph {
        for x in 0..pw {
            out.extend_from_slice(&colors[(y / scale) * w + x / scale]);
        }
    }
    out
}

/// Renders a stored trace, checking that it was produced on `map`.
pub fn render_trace(map: &GridMap, doc: &TraceDocument, scale: usize) -> Result<Vec<u8>, HarnessError> {
    let info = &doc.map;
    if (info.width, info.height) != (map.width(), map.height()) {
        return Err(HarnessError::TraceMismatch(format!(
            "trace is {}x{}, map is {}x{}",
            info.width,
            info.height,
            map.width(),
            map.height()
        )));
    }
    if (info.start, info.goal) != (map.start(), map.goal()) {
        return Err(HarnessError::TraceMismatch("start/goal differ".into()));
    }
    if let Some(p) = doc.positions.iter().find(|p| !map.in_bounds(**p)) {
        return Err(HarnessError::TraceMismatch(format!("position {p} outside map")));
    }
    Ok(render_ppm(map, &doc.positions, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_world::load_ascii_map;

    fn payload(img: &[u8]) -> &[u8] {
        // Header is three newline-terminated lines.
        let mut newlines = 0;
        let at = img
            .iter()
            .position(|&b| {
                if b == b'\n' {
                    newlines += 1;
                }
                newlines == 3
            })
            .unwrap();
        &img[at + 1..]
    }

    #[test]
    fn smallest_image() {
        let map = load_ascii_map("SG").unwrap();
        let img = render_ppm(&map, &[map.start(), map.goal()], 1);
        assert!(img.starts_with(b"P6\n2 1\n255\n"));
        assert_eq!(payload(&img), &[0, 200, 0, 0, 0, 255]);
    }

    #[test]
    fn scaled_dimensions() {
        let map = load_ascii_map("S.#\n..G").unwrap();
        let img = render_ppm(&map, &[map.start()], 4);
        assert!(img.starts_with(b"P6\n12 8\n255\n"));
        assert_eq!(payload(&img).len(), 12 * 8 * 3);
        // Obstacle at (2,0) fills pixels x 8..12, y 0..4.
        let px = |x: usize, y: usize| &payload(&img)[(y * 12 + x) * 3..(y * 12 + x) * 3 + 3];
        assert_eq!(px(8, 0), &OBSTACLE);
        assert_eq!(px(11, 3), &OBSTACLE);
        assert_eq!(px(4, 4), &FREE);
    }

    #[test]
    fn mismatch_is_reported() {
        use crate::ann_planner::PlannerConfig;
        use crate::cli_harness::{evaluate, TraceDocument};
        let map = load_ascii_map("S..\n..G").unwrap();
        let cfg = PlannerConfig::for_map(&map);
        let (trace, metrics) = evaluate(&map, &cfg).unwrap();
        let doc = TraceDocument::new(&map, &cfg, &trace, &metrics);
        let other = load_ascii_map("S...\n...G").unwrap();
        assert!(matches!(render_trace(&other, &doc, 1), Err(HarnessError::TraceMismatch(_))));
        assert!(render_trace(&map, &doc, 1).is_ok());
    }
}
