//! Number formatting shared by results.json, the trajectory CSVs and SVG
//! annotations.

use std::io::{self, Write};

use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

/// 17 significant digits, positional for moderate exponents like `%.17g`,
/// and always with a `.` or an exponent so the text reads back as a float.
pub fn format_f64(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0" } else { "0.0" }.to_string();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent in scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(mut s: String) -> String {
    if !s.contains('.') {
        s.push_str(".0");
        return s;
    }
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.push('0');
    }
    s
}

/// Pretty printer that writes every float through [`format_f64`].
struct Digits17<'a>(PrettyFormatter<'a>);

impl Formatter for Digits17<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(format_f64(value).as_bytes())
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(
        &mut buf,
        Digits17(PrettyFormatter::with_indent(b"  ")),
    );
    serde::Serialize::serialize(value, &mut ser).expect("serializing into memory");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// `tau,x0,...,xn` followed by one row per sample.
pub fn trajectory_csv(rows: &[(f64, Vec<f64>)]) -> String {
    let dim = rows.first().map_or(0, |r| r.1.len());
    let mut out = String::from("tau");
    for i in 0..dim {
        out.push_str(&format!(",x{i}"));
    }
    out.push('\n');
    for (tau, x) in rows {
        out.push_str(&format_f64(*tau));
        for v in x {
            out.push(',');
            out.push_str(&format_f64(*v));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_f64(2.0), "2.0");
        assert_eq!(format_f64(0.1), "0.10000000000000001");
        assert_eq!(format_f64(-1.25), "-1.25");
        assert_eq!(format_f64(1e20), "1.0e20");
        assert_eq!(format_f64(1.5e-7), "1.4999999999999999e-7");
        assert_eq!(format_f64(0.0), "0.0");
        assert_eq!(format_f64(123456789012345680.0), "1.2345678901234568e17");
    }

    #[test]
    fn text_reads_back_exactly() {
        let mut x = 0.7f64;
        for _ in 0..2000 {
            x = (x * 7919.0 + 0.123).fract() * 10f64.powi((x * 40.0) as i32 - 20);
            let back: f64 = format_f64(x).parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x}");
            x = x.abs().fract().max(0.01);
        }
    }

    #[test]
    fn json_uses_the_float_format() {
        let v = serde_json::json!({"a": 0.1, "b": [2.0, 3]});
        assert_eq!(
            to_json(&v),
            "{\n  \"a\": 0.10000000000000001,\n  \"b\": [\n    2.0,\n    3\n  ]\n}\n"
        );
    }

    #[test]
    fn csv_header() {
        let csv = trajectory_csv(&[(0.0, vec![0.0, 0.0, 0.0]), (0.5, vec![0.5, 0.125, 0.0])]);
        assert_eq!(csv, "tau,x0,x1,x2\n0.0,0.0,0.0,0.0\n0.5,0.5,0.125,0.0\n");
    }
}
