//! Binary images: a boolean pixel grid parsed from a plain 0/1 text grid or
//! a PBM "P1" file.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageGrid {
    pub width: usize,
    pub height: usize,
    /// Row-major, true = filled pixel.
    pub pixels: Vec<bool>,
}

impl ImageGrid {
    pub fn new(width: usize, height: usize, pixels: Vec<bool>) -> ImageGrid {
        assert!(width >= 1 && height >= 1, "image dimensions must be positive");
        assert_eq!(pixels.len(), width * height);
        ImageGrid { width, height, pixels }
    }

    pub fn filled(&self, x: i64, row: i64) -> bool {
        if x < 0 || row < 0 || x >= self.width as i64 || row >= self.height as i64 {
            return false;
        }
        self.pixels[row as usize * self.width + x as usize]
    }

    pub fn count_filled(&self) -> usize {
        self.pixels.iter().filter(|&&p| p).count()
    }
}

/// A parse failure with its position, rendered machine-readably by the CLI.
#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Parse either format: PBM "P1" when the first token is P1, else a plain
/// grid of 0/1 characters (whitespace between rows, anything else rejected).
pub fn parse_image(text: &str) -> Result<ImageGrid, ParseError> {
    if text.trim_start().starts_with("P1") {
        parse_pbm(text)
    } else {
        parse_plain(text)
    }
}

fn parse_plain(text: &str) -> Result<ImageGrid, ParseError> {
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (ci, ch) in line.chars().enumerate() {
            match ch {
                '0' => row.push(false),
                '1' => row.push(true),
                ' ' | '\t' => continue,
                other => {
                    return Err(err(li + 1, ci + 1, format!("expected 0 or 1, found {other:?}")))
                }
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(err(1, 1, "empty image"));
    }
    let width = rows[0].len();
    for (li, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(err(
                li + 1,
                row.len() + 1,
                format!("ragged row: expected {width} pixels, found {}", row.len()),
            ));
        }
    }
    let height = rows.len();
    Ok(ImageGrid::new(width, height, rows.concat()))
}

fn parse_pbm(text: &str) -> Result<ImageGrid, ParseError> {
    // token stream with positions; '#' starts a comment to end of line
    let mut tokens: Vec<(usize, usize, String)> = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut col = 0usize;
        for chunk in line.split_whitespace() {
            col = line[col..].find(chunk).map(|p| p + col).unwrap_or(col);
            tokens.push((li + 1, col + 1, chunk.to_string()));
            col += chunk.len();
        }
    }
    let mut it = tokens.into_iter();
    let magic = it.next().ok_or_else(|| err(1, 1, "missing P1 header"))?;
    if magic.2 != "P1" {
        return Err(err(magic.0, magic.1, format!("expected P1, found {}", magic.2)));
    }
    let (wl, wc, w) = it.next().ok_or_else(|| err(1, 1, "missing width"))?;
    let width: usize = w.parse().map_err(|_| err(wl, wc, format!("bad width {w:?}")))?;
    let (hl, hc, h) = it.next().ok_or_else(|| err(wl, wc, "missing height"))?;
    let height: usize = h.parse().map_err(|_| err(hl, hc, format!("bad height {h:?}")))?;
    if width == 0 || height == 0 {
        return Err(err(hl, hc, "image dimensions must be positive"));
    }
    let mut pixels = Vec::with_capacity(width * height);
    let mut last = (hl, hc);
    for (li, ci, tok) in it {
        // PBM allows digits to be packed together
        for ch in tok.chars() {
            match ch {
                '0' => pixels.push(false),
                '1' => pixels.push(true),
                other => return Err(err(li, ci, format!("expected 0 or 1, found {other:?}"))),
            }
        }
        last = (li, ci);
    }
    if pixels.len() != width * height {
        return Err(err(
            last.0,
            last.1,
            format!("expected {} pixels, found {}", width * height, pixels.len()),
        ));
    }
    Ok(ImageGrid::new(width, height, pixels))
}
