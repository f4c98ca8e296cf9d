//! Number rendering with a fixed count of significant digits.

use serde_json::Value;

pub const DEFAULT_DIGITS: usize = 12;

/// Rounds `x` to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.max(1) - 1, x).parse().unwrap_or(x)
}

/// Shortest text for `x` rounded to `digits` significant digits. Plain
/// notation in `[1e-5, 1e15)`, exponent notation outside.
pub fn fmt_num(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let r = round_sig(x, digits);
    if (1e-5..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// JSON number rounded to `digits`; non-finite values become `null`.
pub fn json_num(x: f64, digits: usize) -> Value {
    serde_json::Number::from_f64(round_sig(x, digits)).map_or(Value::Null, Value::Number)
}

pub fn json_opt(x: Option<f64>, digits: usize) -> Value {
    x.map_or(Value::Null, |v| json_num(v, digits))
}
