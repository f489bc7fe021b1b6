//! Plain-text state files.
//!
//! ```text
//! dims 2 d
//! re,im re,im …      (2d entries, single spaces)
//! …                  (2d rows, row-major)
//! ```
//! Parsing is strict: no extra whitespace, no missing or surplus entries. A
//! single trailing newline is accepted. Writing uses the shortest decimal
//! representation that round-trips each `f64` exactly.

use super::DensityMatrix;
use crate::matrix::{ComplexMatrix, C64};
use crate::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the text into a matrix and the declared Bob dimension, without
/// checking physical validity.
pub fn parse_matrix(text: &str) -> Result<(ComplexMatrix, usize)> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n');
    let header = lines.next().unwrap_or("");
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 3 || fields[0] != "dims" || fields[1] != "2" {
        return Err(parse_err(1, format!("expected `dims 2 d`, found `{header}`")));
    }
    let d: usize = fields[2]
        .parse()
        .ok()
        .filter(|&d| d >= 1)
        .ok_or_else(|| parse_err(1, format!("invalid dimension `{}`", fields[2])))?;
    let n = 2 * d;
    let mut data = Vec::with_capacity(n * n);
    for row in 0..n {
        let lineno = row + 2;
        let line = lines
            .next()
            .ok_or_else(|| parse_err(lineno, format!("missing row {} of {n}", row + 1)))?;
        let entries: Vec<&str> = line.split(' ').collect();
        if entries.len() != n {
            return Err(parse_err(
                lineno,
                format!("expected {n} entries, found {}", entries.len()),
            ));
        }
        for (col, entry) in entries.iter().enumerate() {
            let (re, im) = entry.split_once(',').ok_or_else(|| {
                parse_err(lineno, format!("entry {} `{entry}` is not `re,im`", col + 1))
            })?;
            let parse = |s: &str| {
                s.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| parse_err(lineno, format!("entry {} `{entry}` is not numeric", col + 1)))
            };
            data.push(C64::new(parse(re)?, parse(im)?));
        }
    }
    if let Some(extra) = lines.next() {
        return Err(parse_err(n + 2, format!("unexpected trailing content `{extra}`")));
    }
    Ok((ComplexMatrix::from_vec(n, data)?, d))
}

/// Parses and validates a state file.
pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    let (m, d) = parse_matrix(text)?;
    DensityMatrix::new(m, d)
}

pub fn format_state(rho: &DensityMatrix) -> String {
    let m = rho.matrix();
    let mut out = format!("dims 2 {}\n", rho.dim_b());
    for r in 0..m.dim() {
        let row: Vec<String> = m.row(r).iter().map(|z| format!("{},{}", z.re, z.im)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
