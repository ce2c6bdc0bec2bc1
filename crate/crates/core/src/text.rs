//! The polynomial text format: one coefficient per line in ascending degree,
//! each an optionally signed integer or `p/q` fraction. Blank lines and
//! anything after `#` are ignored.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational;

pub fn parse_poly(src: &str) -> Result<Poly> {
    let mut coeffs = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let c = rational::parse(line).ok_or_else(|| Error::Parse {
            line: idx + 1,
            message: format!("expected an integer or p/q fraction, found {line:?}"),
        })?;
        coeffs.push(c);
    }
    if coeffs.is_empty() {
        return Err(Error::Parse { line: 0, message: "no coefficients".into() });
    }
    Ok(Poly::new(coeffs))
}

/// Writes `p` in the text format, optionally preceded by `#` header lines.
pub fn format_poly(p: &Poly, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        let _ = writeln!(out, "# {h}");
    }
    if p.is_zero() {
        out.push_str("0\n");
    }
    for c in p.coeffs() {
        let _ = writeln!(out, "{}", rational::to_string(c));
    }
    out
}
