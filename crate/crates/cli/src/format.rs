//! Number rendering for the human, CSV and JSON outputs.

/// Significant digits of the human and CSV formats.
pub const HUMAN_DIGITS: usize = 15;
/// Significant digits of JSON numbers; enough to round-trip any f64.
pub const JSON_DIGITS: usize = 17;

/// `v` with `digits` significant digits, fixed notation for moderate magnitudes.
pub fn significant(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        // rounding can carry into a new leading digit (9.99.. -> 10.0)
        let rounded: f64 = s.parse().unwrap_or(v);
        if rounded.abs() >= 10f64.powi(exp + 1) && decimals > 0 {
            let decimals = decimals - 1;
            return format!("{v:.decimals$}");
        }
        s
    } else {
        let p = digits - 1;
        format!("{v:.p$e}")
    }
}

/// Fixed notation with the same number of decimals as `template`.
pub fn like_printed(v: f64, template: &str) -> String {
    let decimals = template.split('.').nth(1).map_or(0, str::len);
    format!("{v:.decimals$}")
}

pub fn short(v: f64) -> String {
    format!("{v:.2e}")
}
