//! Number formatting for human-readable output.

/// Formats `x` with 6 significant digits, trailing zeros trimmed.
pub fn sig6(x: f64) -> String {
    sig(x, 6)
}

pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

pub fn sig6_list(xs: &[f64]) -> String {
    let parts: Vec<_> = xs.iter().map(|&x| sig6(x)).collect();
    format!("({})", parts.join(", "))
}
