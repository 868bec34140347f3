//! Deterministic text emitters: every float is written with 17 significant digits.

use std::fmt::Write as _;
use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

use crate::classical::Sample;
use crate::error::{Error, Result};
use crate::spectrum::SpectrumEntry;

/// Scientific notation with 17 significant digits, enough to round-trip any f64.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Trajectory CSV with header `t,x,xdot,eps`.
pub fn trajectory_csv(samples: &[Sample]) -> String {
    let mut out = String::from("t,x,xdot,eps\n");
    for s in samples {
        let _ = writeln!(out, "{},{},{},{}", format_f64(s.t), format_f64(s.x), format_f64(s.xdot), format_f64(s.eps));
    }
    out
}

/// Spectrum CSV with header `n,l,energy,kind,method`.
pub fn spectrum_csv(entries: &[SpectrumEntry]) -> String {
    let mut out = String::from("n,l,energy,kind,method\n");
    for e in entries {
        let _ = writeln!(out, "{},{},{},{},{}", e.n, e.l, format_f64(e.energy), e.kind.as_str(), e.method.as_str());
    }
    out
}

/// Two-column profile CSV, e.g. `x,psi` or `r,chi`.
pub fn profile_csv(abscissa: &str, ordinate: &str, points: &[(f64, f64)]) -> String {
    let mut out = format!("{abscissa},{ordinate}\n");
    for (x, y) in points {
        let _ = writeln!(out, "{},{}", format_f64(*x), format_f64(*y));
    }
    out
}

/// Compact JSON whose numbers use the same 17-digit format as the CSV output.
struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", format_f64(value))
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write!(writer, "{}", format_f64(value as f64))
    }
}

/// Serializes `value` as one line of JSON followed by a newline. Non-finite floats become null.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits);
    value.serialize(&mut ser).map_err(|e| Error::Unsupported(format!("JSON serialization failed: {e}")))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| Error::Unsupported(format!("JSON output is not UTF-8: {e}")))
}
