//! Text output: number formatting and the sweep CSV layout.

use std::fmt::Write;

use crate::dynamics::SweepResult;

/// Header line of the sweep CSV.
pub const CSV_HEADER: &str = "param,c1,c2,c3,concurrence,min,fmin";

/// Shortest representation that round-trips the value rounded to 12
/// significant digits. Negative zero prints as `0`; magnitudes outside
/// `[1e-5, 1e16)` use exponent notation.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    let mag = rounded.abs();
    if (1e-5..1e16).contains(&mag) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Renders a sweep as CSV: the header followed by one line per grid point,
/// each terminated by `\n`.
pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::with_capacity(64 * (result.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &result.rows {
        let fields = [
            row.param,
            row.c.c1,
            row.c.c2,
            row.c.c3,
            row.concurrence,
            row.min,
            row.fmin,
        ];
        let line: Vec<String> = fields.iter().map(|&v| fmt_num(v)).collect();
        writeln!(out, "{}", line.join(",")).expect("writing to a String cannot fail");
    }
    out
}
