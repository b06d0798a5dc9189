//! The point-set text format.
//!
//! ```text
//! # comment lines start with '#'
//! 2 3          <- header: dimension d, row count n
//! 0 0
//! 1 0
//! 0 1
//! ```
//!
//! Blank lines are ignored. Duplicate rows are accepted and dropped on load
//! (the resulting [`PointSet`] carries the duplicate flag).

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::PointSet;

fn parse_ints(line: &str, lineno: usize) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| Error::Parse { line: lineno, message: format!("not an integer: {tok:?}") })
        })
        .collect()
}

/// Parses a point-set document. With `dim_override`, rows are read with that
/// dimension instead of the header's.
pub fn parse_point_set(text: &str, dim_override: Option<usize>) -> Result<PointSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) =
        lines.next().ok_or(Error::Parse { line: 0, message: "missing header \"d n\"".into() })?;
    let header = parse_ints(header, header_line)?;
    let [d, n] = header[..] else {
        return Err(Error::Parse {
            line: header_line,
            message: format!("header must hold two integers \"d n\", found {}", header.len()),
        });
    };
    if d < 1 || n < 0 {
        return Err(Error::Parse { line: header_line, message: format!("invalid header {d} {n}") });
    }
    let d = dim_override.unwrap_or(d as usize);
    let n = n as usize;

    let mut rows: Vec<i64> = Vec::with_capacity(n * d);
    let mut count = 0;
    for (lineno, line) in lines {
        let row = parse_ints(line, lineno)?;
        if row.len() != d {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected {d} coordinates, found {}", row.len()),
            });
        }
        count += 1;
        if count > n {
            return Err(Error::Parse { line: lineno, message: format!("more than the {n} rows declared") });
        }
        rows.extend(row);
    }
    if count != n {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: format!("header declares {n} rows, found {count}"),
        });
    }
    PointSet::new(d, rows.chunks_exact(d))
}

pub fn read_point_set(path: &Path, dim_override: Option<usize>) -> Result<PointSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_point_set(&text, dim_override)
}

pub fn write_point_set<W: Write>(set: &PointSet, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", set.dim(), set.len())?;
    for p in set.iter() {
        let mut first = true;
        for c in p {
            if !first {
                write!(out, " ")?;
            }
            write!(out, "{c}")?;
            first = false;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn format_point_set(set: &PointSet) -> String {
    let mut buf = Vec::new();
    write_point_set(set, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("output is ASCII")
}
