//! Output formatting: one number format for every emitted value, so runs
//! diff cleanly across platforms.

/// 12 significant digits, plain decimal notation, `.` separator; falls back
/// to scientific only when the exponent leaves the positional sweet spot.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp10 = x.abs().log10().floor() as i32;
    if exp10.abs() > 17 {
        return format!("{x:.11e}");
    }
    let decimals = (11 - exp10).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// Quote a CSV field if it holds separators or quotes.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
