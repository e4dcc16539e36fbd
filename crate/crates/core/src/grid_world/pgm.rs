use super::{Cell, GridMap, MapError, Point};

/// Loads a plain (P2) or binary (P5) graymap. Samples below `threshold` are
/// obstacles; everything else is free. Values are compared raw, without
/// rescaling by maxval.
pub fn load_pgm_map(
    bytes: &[u8],
    threshold: u8,
    start: Point,
    goal: Point,
) -> Result<GridMap, MapError> {
    let mut reader = HeaderReader { bytes, pos: 0 };
    let magic = reader.token().ok_or_else(|| malformed("missing magic number"))?;
    let binary = match magic {
        b"P2" => false,
        b"P5" => true,
        other => {
            return Err(malformed(&format!(
                "unsupported magic {:?}",
                String::from_utf8_lossy(other)
            )))
        }
    };
    let width = reader.number("width")?;
    let height = reader.number("height")?;
    let maxval = reader.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(malformed("zero dimension"));
    }
    if maxval == 0 || maxval > 255 {
        return Err(malformed(&format!("maxval {maxval} outside 1..=255")));
    }
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| malformed("dimensions overflow"))?;

    let samples: Vec<u8> = if binary {
        // Exactly one whitespace byte separates maxval from the raster.
        match reader.bytes.get(reader.pos) {
            Some(b) if b.is_ascii_whitespace() => reader.pos += 1,
            _ => return Err(malformed("missing whitespace after maxval")),
        }
        let data = &reader.bytes[reader.pos..];
        if data.len() < expected {
            return Err(MapError::TruncatedData { expected, found: data.len() });
        }
        data[..expected].to_vec()
    } else {
        let mut out = Vec::with_capacity(expected);
        while out.len() < expected {
            let Some(tok) = reader.token() else {
                return Err(MapError::TruncatedData { expected, found: out.len() });
            };
            let v = parse_usize(tok).ok_or_else(|| malformed("non-numeric sample"))?;
            if v > maxval {
                return Err(malformed(&format!("sample {v} exceeds maxval {maxval}")));
            }
            out.push(v as u8);
        }
        out
    };
    if let Some(v) = samples.iter().find(|&&v| v as usize > maxval) {
        return Err(malformed(&format!("sample {v} exceeds maxval {maxval}")));
    }

    let cells = samples
        .iter()
        .map(|&v| if v < threshold { Cell::Obstacle } else { Cell::Free })
        .collect();
    GridMap::new(width, height, cells, start, goal)
}

fn malformed(msg: &str) -> MapError {
    MapError::MalformedHeader(msg.to_string())
}

fn parse_usize(tok: &[u8]) -> Option<usize> {
    std::str::from_utf8(tok).ok()?.parse().ok()
}

struct HeaderReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderReader<'a> {
    /// Next whitespace-delimited token, skipping `#` comments.
    fn token(&mut self) -> Option<&'a [u8]> {
        loop {
            let b = *self.bytes.get(self.pos)?;
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
        let begin = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| !c.is_ascii_whitespace() && *c != b'#')
        {
            self.pos += 1;
        }
        Some(&self.bytes[begin..self.pos])
    }

    fn number(&mut self, what: &str) -> Result<usize, MapError> {
        let tok = self.token().ok_or_else(|| malformed(&format!("missing {what}")))?;
        parse_usize(tok).ok_or_else(|| malformed(&format!("bad {what}")))
    }
}
