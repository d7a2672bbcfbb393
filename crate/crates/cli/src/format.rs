//! Round-trip number formatting shared by every output.

use serde_json::{Number, Value};

/// 17 significant digits in scientific notation; `NaN`, `inf` and `-inf`
/// for non-finite values.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "NaN".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// A JSON number carrying exactly the digits of [`fmt_f64`]; non-finite
/// values become strings.
pub fn json_f64(v: f64) -> Value {
    if v.is_finite() {
        Value::Number(
            fmt_f64(v)
                .parse::<Number>()
                .expect("formatted float is valid JSON"),
        )
    } else {
        Value::String(fmt_f64(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for v in [0.1, -2.644934066848226, 1e-300, 5e-324, 123456789.0] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(json_f64(0.5).to_string(), "5.0000000000000000e-1");
        assert_eq!(json_f64(f64::INFINITY), Value::String("inf".into()));
    }
}
