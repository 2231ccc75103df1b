//! Deterministic number formatting for CSV output.

use std::fmt::Write;

/// 17 significant digits in scientific notation.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Join already formatted fields with commas.
pub fn row<I, S>(fields: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut out = String::new();
    for (k, f) in fields.into_iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(f.as_ref());
    }
    out
}

/// Comma-separated numeric row.
pub fn num_row(values: &[f64]) -> String {
    let mut out = String::with_capacity(values.len() * 24);
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        write!(out, "{v:.16e}").expect("writing to a String cannot fail");
    }
    out
}
