//! Plain-text matrix format: line 1 holds `n`, then `n` lines of `n`
//! whitespace-separated decimals. Numbers are written with 17 significant
//! digits so that a write/parse round trip is lossless.

use std::fmt::Write;

use crate::densela::matrix::GenMatrix;
use crate::error::{Error, Result};

pub fn parse_matrix(text: &str) -> Result<GenMatrix> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (first_no, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let n: usize = first.trim().parse().map_err(|e| Error::Parse {
        line: first_no + 1,
        message: format!("bad dimension `{}`: {e}", first.trim()),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line: first_no + 1,
            message: "dimension must be at least 1".into(),
        });
    }
    let mut data = Vec::with_capacity(n * n);
    for row in 0..n {
        let (no, line) = lines.next().ok_or(Error::Parse {
            line: first_no + row + 2,
            message: format!("expected {n} rows, found {row}"),
        })?;
        let before = data.len();
        for tok in line.split_whitespace() {
            let v: f64 = tok.parse().map_err(|e| Error::Parse {
                line: no + 1,
                message: format!("bad number `{tok}`: {e}"),
            })?;
            data.push(v);
        }
        if data.len() - before != n {
            return Err(Error::Parse {
                line: no + 1,
                message: format!("expected {n} entries, found {}", data.len() - before),
            });
        }
    }
    if let Some((no, _)) = lines.next() {
        return Err(Error::Parse {
            line: no + 1,
            message: "trailing content after matrix".into(),
        });
    }
    GenMatrix::new(n, data)
}

pub fn format_matrix(m: &GenMatrix) -> String {
    let n = m.dim();
    let mut out = format!("{n}\n");
    for i in 0..n {
        for j in 0..n {
            if j > 0 {
                out.push(' ');
            }
            write!(out, "{:.16e}", m.get(i, j)).expect("writing to a String");
        }
        out.push('\n');
    }
    out
}
