//! Text formats.
//!
//! `.bfn`: line 1 is `n <arity>`, line 2 the `2^n` characters `c_i` in `{0,1}`.
//! `.spec`: line 1 is `n <arity>`, then `2^n` lines `mask value` in mask order.
//! Values are written in shortest round-trip form, so a spectrum read back is
//! bit-identical to the one written.

use std::fmt::Write;

use crate::cube::{BooleanFunction, RealFunction};
use crate::error::{Error, Result};
use crate::fourier::Spectrum;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_header(line: Option<&str>) -> Result<u32> {
    let line = line.ok_or_else(|| parse_err(1, "missing header `n <arity>`"))?;
    let rest = line
        .strip_prefix("n ")
        .ok_or_else(|| parse_err(1, format!("expected `n <arity>`, found {line:?}")))?;
    rest.parse::<u32>()
        .map_err(|_| parse_err(1, format!("arity {rest:?} is not a non-negative integer")))
}

fn lines(text: &str) -> Vec<&str> {
    let mut v: Vec<&str> = text.split('\n').collect();
    if v.last() == Some(&"") {
        v.pop();
    }
    v
}

pub fn write_bfn(f: &BooleanFunction) -> String {
    format!("n {}\n{}\n", f.arity(), f.to_bit_string())
}

pub fn parse_bfn(text: &str) -> Result<BooleanFunction> {
    let lines = lines(text);
    let n = parse_header(lines.first().copied())?;
    let bits = lines.get(1).ok_or_else(|| parse_err(2, "missing truth table line"))?;
    if lines.len() > 2 {
        return Err(parse_err(3, "unexpected content after the truth table"));
    }
    BooleanFunction::from_bit_string(n, bits).map_err(|e| parse_err(2, e.to_string()))
}

pub fn write_spec(s: &Spectrum) -> String {
    let mut out = format!("n {}\n", s.arity());
    for (mask, c) in s.coeffs().iter().enumerate() {
        let _ = writeln!(out, "{mask} {c}");
    }
    out
}

pub fn parse_spec(text: &str) -> Result<Spectrum> {
    let lines = lines(text);
    let n = parse_header(lines.first().copied())?;
    crate::cube::check_arity(n).map_err(|e| parse_err(1, e.to_string()))?;
    let size = 1usize << n;
    if lines.len() != size + 1 {
        return Err(parse_err(
            lines.len().min(size + 1) + 1,
            format!("expected {size} coefficient lines, found {}", lines.len() - 1),
        ));
    }
    let mut coeffs = Vec::with_capacity(size);
    for (k, line) in lines[1..].iter().enumerate() {
        let lineno = k + 2;
        let (mask, value) = line
            .split_once(' ')
            .ok_or_else(|| parse_err(lineno, format!("expected `mask value`, found {line:?}")))?;
        let mask: usize =
            mask.parse().map_err(|_| parse_err(lineno, format!("bad mask {mask:?}")))?;
        if mask != k {
            return Err(parse_err(lineno, format!("expected mask {k}, found {mask}")));
        }
        let value: f64 =
            value.parse().map_err(|_| parse_err(lineno, format!("bad value {value:?}")))?;
        if !value.is_finite() {
            return Err(parse_err(lineno, "non-finite coefficient"));
        }
        coeffs.push(value);
    }
    Spectrum::new(n, coeffs)
}

/// Compact serialization for real-valued witnesses: `n <arity>` then the
/// values separated by spaces.
pub fn write_real(f: &RealFunction) -> String {
    let mut out = format!("n {}\n", f.arity());
    for (i, v) in f.values().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out.push('\n');
    out
}

pub fn parse_real(text: &str) -> Result<RealFunction> {
    let lines = lines(text);
    let n = parse_header(lines.first().copied())?;
    let body = lines.get(1).ok_or_else(|| parse_err(2, "missing value line"))?;
    let values = body
        .split(' ')
        .map(|t| t.parse::<f64>().map_err(|_| parse_err(2, format!("bad value {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    RealFunction::new(n, values).map_err(|e| parse_err(2, e.to_string()))
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub enum Loaded {
    Boolean(BooleanFunction),
    Spectrum(Spectrum),
}

/// Detects the format from content: a `.spec` body has `mask value` pairs.
pub fn parse_any(text: &str) -> Result<Loaded> {
    match lines(text).get(1) {
        Some(l) if l.contains(' ') => parse_spec(text).map(Loaded::Spectrum),
        _ => parse_bfn(text).map(Loaded::Boolean),
    }
}
