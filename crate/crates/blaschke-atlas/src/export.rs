//! Flat-file export: the grid CSV schema, its re-import, and lift dumps.
//!
//! Floats are written with `{}` (shortest round-trip representation), so a
//! parse of our own output reproduces every bit.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::atlas::{Connectivity, Label, ParamClassRecord};
use crate::circle::{LiftTable, SemiconjugacySample};
use crate::error::AtlasError;
use crate::polys::{PolyClassRecord, PolyFamily};

pub const PARAM_CSV_HEADER: &str =
    "a_re,a_im,label,period,mult_re,mult_im,swapping,connectivity,iters";
pub const POLY_CSV_HEADER: &str =
    "family,a_re,a_im,label,period,mult_re,mult_im,swapping,connectivity,iters";

/// The CSV projection of a classified grid pixel. Cycle points are not part
/// of the flat schema; period 0 means no cycle and zeroes out the multiplier
/// columns.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridRecord {
    pub family: Option<PolyFamily>,
    pub a: Complex64,
    pub label: Label,
    pub period: usize,
    pub multiplier: Complex64,
    pub swapping: bool,
    pub connectivity: Connectivity,
    pub iterations: usize,
}

impl GridRecord {
    pub fn from_param(record: &ParamClassRecord) -> Self {
        GridRecord {
            family: None,
            a: record.a,
            label: record.label,
            period: record.period(),
            multiplier: record.multiplier(),
            swapping: record.swapping,
            connectivity: record.connectivity,
            iterations: record.iterations,
        }
    }

    pub fn from_poly(record: &PolyClassRecord) -> Self {
        let cycle = record.cycle.as_ref();
        // Polynomial connectivity: z = 0 is superattracting for M_b and the
        // unique critical point of the degree-2 families, so the Julia set is
        // connected exactly when the free critical orbit stays bounded.
        let connectivity = match record.label {
            Label::EscapingImmediate | Label::EscapingDelayed => Connectivity::Disconnected,
            Label::DiskEscape | Label::Disjoint => Connectivity::Connected,
            _ => Connectivity::Unknown,
        };
        GridRecord {
            family: Some(record.family),
            a: record.parameter,
            label: record.label,
            period: cycle.map(|c| c.period).unwrap_or(0),
            multiplier: cycle
                .map(|c| c.multiplier)
                .unwrap_or(Complex64::new(0.0, 0.0)),
            swapping: false,
            connectivity,
            iterations: record.iterations,
        }
    }
}

fn push_row(out: &mut String, r: &GridRecord) {
    if let Some(family) = r.family {
        let _ = write!(out, "{},", family.as_str());
    }
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{},{}",
        r.a.re,
        r.a.im,
        r.label.as_str(),
        r.period,
        r.multiplier.re,
        r.multiplier.im,
        r.swapping,
        r.connectivity.as_str(),
        r.iterations
    );
}

pub fn param_csv(records: &[ParamClassRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(PARAM_CSV_HEADER);
    out.push('\n');
    for r in records {
        push_row(&mut out, &GridRecord::from_param(r));
    }
    out
}

pub fn poly_csv(records: &[PolyClassRecord]) -> String {
    let mut out = String::with_capacity(72 * (records.len() + 1));
    out.push_str(POLY_CSV_HEADER);
    out.push('\n');
    for r in records {
        push_row(&mut out, &GridRecord::from_poly(r));
    }
    out
}

fn bad(line: usize, message: impl Into<String>) -> AtlasError {
    AtlasError::MalformedCsv {
        line,
        message: message.into(),
    }
}

fn parse_field<T: std::str::FromStr>(
    field: Option<&str>,
    line: usize,
    name: &str,
) -> Result<T, AtlasError> {
    let raw = field.ok_or_else(|| bad(line, format!("missing field {name}")))?;
    raw.trim()
        .parse()
        .map_err(|_| bad(line, format!("bad {name}: {raw:?}")))
}

fn parse_rows(text: &str, with_family: bool) -> Result<Vec<GridRecord>, AtlasError> {
    let expected_header = if with_family {
        POLY_CSV_HEADER
    } else {
        PARAM_CSV_HEADER
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == expected_header => {}
        Some((_, header)) => return Err(bad(1, format!("unexpected header {header:?}"))),
        None => return Err(bad(1, "empty input")),
    }
    let mut records = Vec::new();
    for (idx, row) in lines {
        let line = idx + 1;
        if row.trim().is_empty() {
            continue;
        }
        let mut fields = row.split(',');
        let family = if with_family {
            Some(parse_field::<PolyFamily>(fields.next(), line, "family")?)
        } else {
            None
        };
        let a_re: f64 = parse_field(fields.next(), line, "a_re")?;
        let a_im: f64 = parse_field(fields.next(), line, "a_im")?;
        let label: Label = parse_field(fields.next(), line, "label")?;
        let period: usize = parse_field(fields.next(), line, "period")?;
        let mult_re: f64 = parse_field(fields.next(), line, "mult_re")?;
        let mult_im: f64 = parse_field(fields.next(), line, "mult_im")?;
        let swapping: bool = parse_field(fields.next(), line, "swapping")?;
        let connectivity: Connectivity = parse_field(fields.next(), line, "connectivity")?;
        let iterations: usize = parse_field(fields.next(), line, "iters")?;
        if let Some(extra) = fields.next() {
            return Err(bad(line, format!("trailing field {extra:?}")));
        }
        records.push(GridRecord {
            family,
            a: Complex64::new(a_re, a_im),
            label,
            period,
            multiplier: Complex64::new(mult_re, mult_im),
            swapping,
            connectivity,
            iterations,
        });
    }
    Ok(records)
}

pub fn parse_param_csv(text: &str) -> Result<Vec<GridRecord>, AtlasError> {
    parse_rows(text, false)
}

pub fn parse_poly_csv(text: &str) -> Result<Vec<GridRecord>, AtlasError> {
    parse_rows(text, true)
}

/// (x, F(x), H_depth(x)) triples over the lift grid, including the wrap row
/// at x = 1.
pub fn lift_csv(lift: &LiftTable, sample: &SemiconjugacySample) -> String {
    let n = lift.grid_size();
    let mut out = String::with_capacity(48 * (n + 2));
    out.push_str("x,f,h\n");
    for k in 0..=n {
        let _ = writeln!(
            out,
            "{},{},{}",
            lift.x(k),
            lift.values()[k],
            sample.values[k]
        );
    }
    out
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("record serialization is total");
    text.push('\n');
    text
}

pub fn write_text(path: impl AsRef<Path>, content: &str) -> Result<(), AtlasError> {
    let path = path.as_ref();
    std::fs::write(path, content).map_err(|e| AtlasError::io(path.display().to_string(), e))
}

pub fn read_text(path: impl AsRef<Path>) -> Result<String, AtlasError> {
    let path = path.as_ref();
    std::fs::read_to_string(path).map_err(|e| AtlasError::io(path.display().to_string(), e))
}
