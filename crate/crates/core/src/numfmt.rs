//! Fixed-precision number output shared by the JSON and CSV writers.

/// Significant digits of every emitted number.
pub const SIG_DIGITS: usize = 12;

/// Rounds to [`SIG_DIGITS`] significant digits. Serializing the result with
/// a shortest-round-trip formatter prints at most that many digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    let s = format!("{:.*e}", SIG_DIGITS - 1, x);
    let r: f64 = s.parse().expect("scientific notation round-trips");
    // normalize -0.0
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Text form used in CSV cells.
pub fn fmt_sig(x: f64) -> String {
    format!("{}", round_sig(x))
}
