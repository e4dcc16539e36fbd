use super::{Cell, GridMap, MapError, Point};

/// Parses the text map format: `.` free, `#` obstacle, `S` start, `G` goal,
/// one row per line. Row 0 is the first line. A trailing newline and `\r`
/// line endings are accepted.
pub fn load_ascii_map(text: &str) -> Result<GridMap, MapError> {
    let rows: Vec<&str> = text
        .strip_suffix('\n')
        .unwrap_or(text)
        .split('\n')
        .map(|r| r.strip_suffix('\r').unwrap_or(r))
        .collect();
    if rows.is_empty() || rows[0].is_empty() {
        return Err(MapError::Empty);
    }
    let width = rows[0].chars().count();
    let height = rows.len();

    let mut cells = Vec::with_capacity(width * height);
    let mut starts = Vec::new();
    let mut goals = Vec::new();
    for (y, row) in rows.iter().enumerate() {
        let len = row.chars().count();
        if len != width {
            return Err(MapError::RaggedRows { row: y, len, expected: width });
        }
        for (x, ch) in row.chars().enumerate() {
            let cell = match ch {
                '.' => Cell::Free,
                '#' => Cell::Obstacle,
                'S' => {
                    starts.push(Point::new(x, y));
                    Cell::Free
                }
                'G' => {
                    goals.push(Point::new(x, y));
                    Cell::Free
                }
                _ => return Err(MapError::BadChar { ch, row: y, col: x }),
            };
            cells.push(cell);
        }
    }
    if starts.len() != 1 {
        return Err(MapError::MissingOrDuplicateStart(starts.len()));
    }
    if goals.len() != 1 {
        return Err(MapError::MissingOrDuplicateGoal(goals.len()));
    }
    GridMap::new(width, height, cells, starts[0], goals[0])
}
