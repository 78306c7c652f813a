//! Locale-independent numeric formatting shared by the pair export, the
//! plots, and the CLI report: values are rounded to 12 significant digits
//! and printed as the shortest decimal that round-trips, which keeps golden
//! files byte-stable across runs and platforms.

/// Rounds to 12 significant digits. Zero and non-finite values pass through.
pub(crate) fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("scientific round-trip")
}

/// Shortest decimal form of the 12-significant-digit rounding; infinities
/// print as `inf`.
pub(crate) fn fmt_sig12(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    format!("{}", round_sig12(x))
}

/// Short tick-label form: 4 significant digits.
pub(crate) fn fmt_tick(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{x:.3e}").parse().expect("scientific round-trip");
    format!("{rounded}")
}
