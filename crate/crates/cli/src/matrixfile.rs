//! Matrix and cycle file formats.
//!
//! Matrix files: first line "rows cols", then sparse triples "r c v" with
//! 1-based indices. Cycle files: lines "coeff kind x y" where kind is `h`
//! or `v` for the edge from (x,y) rightward or downward.

use crate::cubical::{hedge, vedge};
use crate::image::ParseError;
use homred_core::matrix::IntMatrix;
use homred_core::Chain;

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

fn parse_num<T: std::str::FromStr>(
    tok: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| err(line, 1, format!("missing {what}")))?;
    tok.parse().map_err(|_| err(line, 1, format!("bad {what}: {tok:?}")))
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (li, header) = lines.next().ok_or_else(|| err(1, 1, "empty matrix file"))?;
    let mut toks = header.split_whitespace();
    let rows: usize = parse_num(toks.next(), li, "row count")?;
    let cols: usize = parse_num(toks.next(), li, "column count")?;
    let mut m = IntMatrix::zero(rows, cols);
    for (li, line) in lines {
        let mut toks = line.split_whitespace();
        let r: usize = parse_num(toks.next(), li, "row index")?;
        let c: usize = parse_num(toks.next(), li, "column index")?;
        let v: i64 = parse_num(toks.next(), li, "value")?;
        if r < 1 || r > rows || c < 1 || c > cols {
            return Err(err(li, 1, format!("entry ({r},{c}) out of bounds")));
        }
        m.set(r - 1, c - 1, v);
    }
    Ok(m)
}

/// Render a matrix in the same format.
pub fn format_matrix(m: &IntMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for (r, c, v) in m.iter() {
        out.push_str(&format!("{} {} {}\n", r + 1, c + 1, v));
    }
    out
}

/// Parse a 1-cycle on the cubical lattice.
pub fn parse_cycle(text: &str) -> Result<Chain, ParseError> {
    let mut chain = Chain::zero(1);
    for (li, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let li = li + 1;
        let mut toks = line.split_whitespace();
        let coeff: i64 = parse_num(toks.next(), li, "coefficient")?;
        let kind = toks.next().ok_or_else(|| err(li, 1, "missing edge kind"))?;
        let x: i64 = parse_num(toks.next(), li, "x")?;
        let y: i64 = parse_num(toks.next(), li, "y")?;
        let cell = match kind {
            "h" => hedge(x, y),
            "v" => vedge(x, y),
            other => return Err(err(li, 1, format!("edge kind must be h or v, got {other:?}"))),
        };
        chain.add_cell(&cell, coeff);
    }
    Ok(chain)
}
