//! Pixel production: palettes over classification records, dynamical-plane
//! grids, and P6 PPM / PNG encoding.
//!
//! Every palette is a pure total function of its record, so images are
//! byte-identical for any worker count.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::atlas::{classify_parameter, Label, ParamClassRecord, PlaneSpec};
use crate::error::AtlasError;
use crate::export::GridRecord;
use crate::family::{BlaschkeParam, ExtComplex};
use crate::orbit::{classify_fate, CycleRecord, Fate, FateTag};
use crate::polys::PolyClassRecord;

pub type Rgb = [u8; 3];

pub const RED: Rgb = [255, 0, 0];
pub const BLACK: Rgb = [0, 0, 0];
pub const GREEN: Rgb = [0, 168, 0];
pub const PINK: Rgb = [255, 110, 180];
pub const BLUE: Rgb = [40, 60, 230];
pub const YELLOW: Rgb = [240, 200, 0];
/// Attracting fate that matches neither reference cycle in a dynamical plane.
pub const GRAY: Rgb = [200, 200, 200];

/// Parameter-plane palette: escape red, orbit-to-zero black, on-circle cycle
/// green, off-circle cycle pink, everything undecided blue.
pub fn param_color(record: &ParamClassRecord) -> Rgb {
    match record.label {
        Label::EscapingImmediate | Label::EscapingDelayed => RED,
        Label::DiskEscape | Label::Degenerate => BLACK,
        // Undecided may still carry cycle data (parabolic suspects, or one
        // orbit settled with the other out of budget); the label wins.
        Label::NonHyperbolicCircle | Label::Undecided => BLUE,
        _ => match &record.cycle_plus {
            Some(cycle) if cycle.is_attracting() => {
                if cycle.on_circle {
                    GREEN
                } else {
                    PINK
                }
            }
            _ => BLUE,
        },
    }
}

/// Palette for records restored from the flat CSV schema, which does not
/// carry cycle geometry: tongue labels are the only ones guaranteed on the
/// circle, so every other cycle-bearing label renders pink. Matches the
/// fresh palettes byte for byte except on-circle non-tongue cycles
/// (1 < |a| < 2), whose circle membership the schema cannot express.
pub fn csv_color(record: &GridRecord) -> Rgb {
    match record.label {
        Label::EscapingImmediate | Label::EscapingDelayed => {
            if record.family.is_some() {
                red_shade(record.iterations)
            } else {
                RED
            }
        }
        Label::DiskEscape | Label::Degenerate => BLACK,
        Label::TongueAdjacent => GREEN,
        Label::Bitransitive
        | Label::Capture
        | Label::Disjoint
        | Label::SwappingBitransitive
        | Label::SwappingDisjoint => PINK,
        Label::NonHyperbolicCircle | Label::Undecided => BLUE,
    }
}

/// Comparison-family palette: escape shaded by time, zero basin black,
/// attracting cycle pink.
pub fn poly_color(record: &PolyClassRecord) -> Rgb {
    match record.label {
        Label::EscapingImmediate | Label::EscapingDelayed => red_shade(record.iterations),
        Label::DiskEscape => BLACK,
        // Attracting cycles only; a parabolic suspect stays Undecided/blue.
        Label::Disjoint => PINK,
        _ => BLUE,
    }
}

fn red_shade(escape_time: usize) -> Rgb {
    let s = 80.0 + 175.0 * (-(escape_time as f64) / 48.0).exp();
    [s as u8, 0, 0]
}

/// Dynamical-plane palette relative to the parameter's two critical cycles.
pub fn dyn_color(fate: &Fate, plus: Option<&CycleRecord>, minus: Option<&CycleRecord>) -> Rgb {
    match &fate.tag {
        FateTag::EscapeInf => red_shade(fate.iterations_used),
        FateTag::EscapeZero => BLACK,
        FateTag::Cycle(cycle) => {
            if matches_cycle(cycle, plus) {
                GREEN
            } else if matches_cycle(cycle, minus) {
                YELLOW
            } else {
                GRAY
            }
        }
        FateTag::Undecided => BLUE,
    }
}

fn matches_cycle(cycle: &CycleRecord, reference: Option<&CycleRecord>) -> bool {
    let Some(reference) = reference else {
        return false;
    };
    // Distinct attracting cycles of one map are far apart compared to polish
    // noise, so one near-coincidence identifies the whole cycle.
    cycle.points.iter().any(|z| {
        reference
            .points
            .iter()
            .any(|w| (z - w).norm() < 1e-6 * w.norm().max(1.0))
    })
}

/// Fates of the seed grid z₀ = pixel for a fixed parameter, row-parallel.
pub fn dyn_plane_grid(a: Complex64, spec: &PlaneSpec) -> Result<Vec<Fate>, AtlasError> {
    let p = BlaschkeParam::new(a);
    if p.is_degenerate() {
        return Err(AtlasError::DegenerateParameter(a));
    }
    let rows: Vec<Vec<Fate>> = (0..spec.ny)
        .into_par_iter()
        .map(|iy| {
            (0..spec.nx)
                .map(|ix| classify_fate(&p, ExtComplex::Finite(spec.pixel(ix, iy)), &spec.orbit))
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

/// Render a dynamical plane: classify the parameter once for the reference
/// cycles, then color every pixel fate against them.
pub fn render_dyn_plane(a: Complex64, spec: &PlaneSpec) -> Result<Vec<Rgb>, AtlasError> {
    let record = classify_parameter(a, &spec.orbit);
    let plus = record.cycle_plus.as_ref().filter(|c| c.is_attracting());
    let minus = record.cycle_minus.as_ref().filter(|c| c.is_attracting());
    let fates = dyn_plane_grid(a, spec)?;
    Ok(fates.iter().map(|f| dyn_color(f, plus, minus)).collect())
}

pub fn render_param_plane(records: &[ParamClassRecord]) -> Vec<Rgb> {
    records.iter().map(param_color).collect()
}

pub fn render_poly_plane(records: &[PolyClassRecord]) -> Vec<Rgb> {
    records.iter().map(poly_color).collect()
}

pub fn render_csv_records(records: &[GridRecord]) -> Vec<Rgb> {
    records.iter().map(csv_color).collect()
}

/// P6 PPM bytes: `P6\n{w} {h}\n255\n` then RGB triples row-major from the
/// top-left pixel.
pub fn encode_ppm(width: usize, height: usize, pixels: &[Rgb]) -> Vec<u8> {
    assert_eq!(pixels.len(), width * height, "pixel buffer shape mismatch");
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    out.reserve(3 * pixels.len());
    for p in pixels {
        out.extend_from_slice(p);
    }
    out
}

pub fn write_ppm(
    path: impl AsRef<Path>,
    width: usize,
    height: usize,
    pixels: &[Rgb],
) -> Result<(), AtlasError> {
    let path = path.as_ref();
    std::fs::write(path, encode_ppm(width, height, pixels))
        .map_err(|e| AtlasError::io(path.display().to_string(), e))
}

pub fn write_png(
    path: impl AsRef<Path>,
    width: usize,
    height: usize,
    pixels: &[Rgb],
) -> Result<(), AtlasError> {
    assert_eq!(pixels.len(), width * height, "pixel buffer shape mismatch");
    let path = path.as_ref();
    let as_io = |e: std::io::Error| AtlasError::io(path.display().to_string(), e);
    let file = File::create(path).map_err(as_io)?;
    let mut encoder = png::Encoder::new(BufWriter::new(file), width as u32, height as u32);
    encoder.set_color(png::ColorType::Rgb);
    encoder.set_depth(png::BitDepth::Eight);
    let mut writer = encoder
        .write_header()
        .map_err(|e| as_io(std::io::Error::other(e)))?;
    writer
        .write_image_data(pixels.as_flattened())
        .map_err(|e| as_io(std::io::Error::other(e)))
}

/// Dispatch on extension: `.png` gets PNG, anything else the canonical PPM.
pub fn write_image(
    path: impl AsRef<Path>,
    width: usize,
    height: usize,
    pixels: &[Rgb],
) -> Result<(), AtlasError> {
    let path = path.as_ref();
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("png")) {
        write_png(path, width, height, pixels)
    } else {
        write_ppm(path, width, height, pixels)
    }
}

/// Run `f` inside a rayon pool of exactly `threads` workers, or on the global
/// pool when unspecified.
pub fn with_worker_count<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("worker pool")
            .install(f),
        _ => f(),
    }
}
