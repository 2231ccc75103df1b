//! Plain-text matrix block: four lines of four whitespace-separated
//! `re+imj` entries. Blank lines and lines starting with `#` are skipped.

use std::fmt;

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub(super) fn write_block(m: &Matrix4<Complex64>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for i in 0..4 {
        for j in 0..4 {
            if j > 0 {
                f.write_str(" ")?;
            }
            write_complex(m[(i, j)], f)?;
        }
        f.write_str("\n")?;
    }
    Ok(())
}

fn write_complex(z: Complex64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{:.16e}{:+.16e}j", z.re, z.im)
}

pub(super) fn parse_block(s: &str) -> Result<Matrix4<Complex64>> {
    let mut m = Matrix4::zeros();
    let mut row = 0usize;
    let mut last_line = 0usize;
    for (idx, line) in s.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if row == 4 {
            return Err(parse_err(line_no, "more than four matrix rows"));
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 4 {
            return Err(parse_err(
                line_no,
                format!("expected 4 entries, found {}", tokens.len()),
            ));
        }
        for (col, tok) in tokens.iter().enumerate() {
            m[(row, col)] = parse_complex(tok).map_err(|msg| parse_err(line_no, msg))?;
        }
        row += 1;
    }
    if row != 4 {
        return Err(parse_err(
            last_line.max(1),
            format!("expected 4 matrix rows, found {row}"),
        ));
    }
    Ok(m)
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parse `re+imj`, `re-imj`, `imj` or a bare real.
pub(crate) fn parse_complex(tok: &str) -> std::result::Result<Complex64, String> {
    let bad = || format!("malformed complex entry {tok:?}");
    let (re, im) = match tok.strip_suffix(['j', 'i']) {
        None => (parse_finite(tok).ok_or_else(bad)?, 0.0),
        Some(body) => {
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
            match split {
                Some(k) => (
                    parse_finite(&body[..k]).ok_or_else(bad)?,
                    parse_finite(&body[k..]).ok_or_else(bad)?,
                ),
                None => (0.0, parse_finite(body).ok_or_else(bad)?),
            }
        }
    };
    Ok(Complex64::new(re, im))
}

fn parse_finite(s: &str) -> Option<f64> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.starts_with(['+', '-']) && s[1..].starts_with(['+', '-']) {
        return None;
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}
