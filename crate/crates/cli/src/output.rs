use std::fmt::Write as _;
use std::path::Path;

use eulb_core::ScenarioConfig;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

/// `%.9g`: nine significant digits, trailing zeros trimmed, exponent form
/// outside `[1e-5, 1e9)`. Always uses `.` as the decimal separator.
pub fn format_sig9(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..9).contains(&exp) {
        let s = format!("{x:.8e}");
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        return format!("{}e{e}", trim_zeros(mantissa));
    }
    let decimals = (8 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// SHA-256 of the parsed config serialized as JSON. Object keys come out
/// sorted, so the digest ignores key order and formatting in the source file.
pub fn scenario_digest(cfg: &ScenarioConfig) -> String {
    let canonical = serde_json::to_string(cfg).expect("config serializes");
    let mut hex = String::with_capacity(64);
    for byte in Sha256::digest(canonical.as_bytes()).iter() {
        write!(hex, "{byte:02x}").unwrap();
    }
    hex
}

pub(crate) fn num(x: f64) -> Result<Value, CliError> {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .ok_or_else(|| CliError::Degenerate(format!("non-finite result {x}")))
}

pub(crate) fn json_text(map: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("JSON value serializes");
    s.push('\n');
    s
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig9_matches_printf_g() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (0.5, "0.5"),
            (1.0 / 3.0, "0.333333333"),
            (2.0 / 3.0, "0.666666667"),
            (123456.789012, "123456.789"),
            (-1.57496785, "-1.57496785"),
            (1e-9, "1e-9"),
            (12345.0e-10, "1.2345e-6"),
            (1e5, "100000"),
            (1.234567891e10, "1.23456789e10"),
            (0.000123456789123, "0.000123456789"),
        ];
        for (x, want) in cases {
            assert_eq!(format_sig9(x), want, "{x}");
        }
    }

    #[test]
    fn digest_ignores_key_order() {
        let a = ScenarioConfig::from_toml(
            "[initial_state]\nkind = \"bell_diagonal_p\"\np = 0.3\n[channel]\nkind = \"depolarizing\"\nr_a = 0.1\nr_b = 0.2\n",
        )
        .unwrap();
        let b = ScenarioConfig::from_toml(
            "[channel]\nr_b = 0.2\nkind = \"depolarizing\"\nr_a = 0.1\n\n[initial_state]\np = 0.3\nkind = \"bell_diagonal_p\"\n",
        )
        .unwrap();
        assert_eq!(scenario_digest(&a), scenario_digest(&b));
        assert_eq!(scenario_digest(&a).len(), 64);
        let c = ScenarioConfig::from_toml(
            "[initial_state]\nkind = \"bell_diagonal_p\"\np = 0.31\n[channel]\nkind = \"depolarizing\"\nr_a = 0.1\nr_b = 0.2\n",
        )
        .unwrap();
        assert_ne!(scenario_digest(&a), scenario_digest(&c));
    }
}
