//! Number formatting shared by the JSON and CSV writers.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

/// Significant digits of floats in JSON documents.
pub const JSON_DIGITS: usize = 17;
/// Significant digits of floats in CSV files.
pub const CSV_DIGITS: usize = 12;

pub const SCHEMA: &str = "susy-trm/1";

/// `v` rounded to `digits` significant digits, trailing zeros dropped.
/// Positional notation is used for decimal exponents in [−5, digits).
pub fn significant(v: f64, digits: usize) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent in {:e} output");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits_only: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if (-5..digits as i32).contains(&exponent) {
        if exponent >= 0 {
            let point = exponent as usize + 1;
            trim(format!(
                "{}.{}",
                &digits_only[..point],
                &digits_only[point..]
            ))
        } else {
            trim(format!(
                "0.{}{}",
                "0".repeat((-exponent - 1) as usize),
                digits_only
            ))
        }
    } else {
        format!("{}e{}", trim(mantissa.to_string()), exponent)
    };
    format!("{sign}{body}")
}

fn trim(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Compact JSON with every float written at [`JSON_DIGITS`] digits.
struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(significant(value, JSON_DIGITS).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, FixedDigits);
    value
        .serialize(&mut ser)
        .expect("serializing into memory cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON output is UTF-8")
}

/// CSV text with a header row and LF line endings.
pub fn to_csv(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| significant(*v, CSV_DIGITS)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(significant(-37.5, 17), "-37.5");
        assert_eq!(significant(-134.38888888888889, 17), "-134.38888888888889");
        assert_eq!(significant(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(significant(1e-7, 12), "1e-7");
        assert_eq!(significant(1e-7, 17), "9.9999999999999995e-8");
        assert_eq!(significant(2.5e-5, 12), "0.000025");
        assert_eq!(significant(6.02214076e23, 12), "6.02214076e23");
        assert_eq!(significant(0.0, 12), "0");
        assert_eq!(significant(100.0, 12), "100");
    }

    #[test]
    fn json_round_trips_doubles() {
        for v in [
            std::f64::consts::PI,
            -1.0101010101010102,
            1e-300,
            123456789.123456789,
        ] {
            let text = significant(v, JSON_DIGITS);
            assert_eq!(text.parse::<f64>().unwrap(), v);
        }
        assert_eq!(
            to_json(&serde_json::json!({"x": 0.1, "n": 3, "bad": f64::NAN})),
            "{\"bad\":null,\"n\":3,\"x\":0.10000000000000001}\n"
        );
    }
}
