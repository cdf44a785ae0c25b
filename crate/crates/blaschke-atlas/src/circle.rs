//! The circle restriction B_a|_{S¹} as a real map of degree 2, for |a| ≥ 2:
//! continuous lifts, the semiconjugacy H to the doubling map, and tongue
//! membership. Below modulus 2 points of the circle have a mix of 2 and 4
//! preimages, no cover of constant degree exists, and every operation here
//! refuses the parameter.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::AtlasError;
use crate::family::{self, BlaschkeParam};
use crate::orbit::{self, OrbitSpec};

pub const MIN_LIFT_GRID: usize = 256;
/// Beyond this depth F^n(x) ~ 2^n outgrows the resolution of an f64
/// fractional part and the iterated lift becomes meaningless.
pub const MAX_DEPTH: u32 = 48;

/// arg(B_a(e^{2πix})) / 2π in (−1/2, 1/2].
fn circle_angle(p: &BlaschkeParam, x: f64) -> f64 {
    let z = Complex64::from_polar(1.0, TAU * x);
    let w = family::eval_finite(p, z)
        .finite()
        .unwrap_or(Complex64::new(1.0, 0.0));
    w.arg() / TAU
}

/// A continuous lift F of x ↦ arg(B_a(e^{2πix}))/2π, tabulated on a uniform
/// grid over [0, 1] and extended by the wraparound rule F(x+1) = F(x) + 2.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftTable {
    param: BlaschkeParam,
    grid_size: usize,
    /// F(k / grid_size) for k = 0..=grid_size; nondecreasing with
    /// values[grid_size] = values[0] + 2.
    values: Vec<f64>,
    base_anchor: f64,
}

impl LiftTable {
    pub fn parameter(&self) -> &BlaschkeParam {
        &self.param
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    /// Grid abscissa of sample k.
    pub fn x(&self, k: usize) -> f64 {
        k as f64 / self.grid_size as f64
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// F(0), fixed in [0, 1).
    pub fn base_anchor(&self) -> f64 {
        self.base_anchor
    }

    pub fn winding(&self) -> f64 {
        self.values[self.grid_size] - self.values[0]
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(k, &v)| (k as f64 / self.grid_size as f64, v))
    }

    fn split(&self, x: f64) -> (f64, f64) {
        let n = x.floor();
        (n, x - n)
    }

    /// Piecewise-linear interpolation of the table, extended by wraparound.
    pub fn eval(&self, x: f64) -> f64 {
        let (n, frac) = self.split(x);
        let pos = frac * self.grid_size as f64;
        let i = (pos.floor() as usize).min(self.grid_size - 1);
        let t = pos - i as f64;
        self.values[i] * (1.0 - t) + self.values[i + 1] * t + 2.0 * n
    }

    /// Exact lift value: the angle formula evaluated at x itself, with the
    /// interpolated table used only to pick the integer branch.
    pub fn eval_exact(&self, x: f64) -> f64 {
        let (n, frac) = self.split(x);
        let theta = circle_angle(&self.param, frac);
        let approx = self.eval(frac);
        theta + (approx - theta).round() + 2.0 * n
    }
}

/// Tabulate the lift of B_a|_{S¹}. Each successive value is chosen within
/// 1/2 of the previous one, which is valid because the circle slope of the
/// family stays far below grid_size/2 for every |a| ≥ 2.
pub fn build_lift(p: &BlaschkeParam, grid_size: usize) -> Result<LiftTable, AtlasError> {
    if p.modulus() < 2.0 {
        return Err(AtlasError::LiftUndefined(p.modulus()));
    }
    if grid_size < MIN_LIFT_GRID {
        return Err(AtlasError::LiftGridTooSmall(grid_size, MIN_LIFT_GRID));
    }
    let mut values = Vec::with_capacity(grid_size + 1);
    let theta0 = circle_angle(p, 0.0);
    let anchor = theta0 - theta0.floor();
    values.push(anchor);
    for k in 1..=grid_size {
        let theta = circle_angle(p, k as f64 / grid_size as f64);
        let prev = values[k - 1];
        let mut v = theta + (prev - theta).round();
        if v < prev {
            // The true lift is nondecreasing; sub-roundoff dips appear only
            // next to the flat point that |a| = 2 puts on the circle.
            if prev - v < 1e-9 {
                v = prev;
            } else {
                return Err(AtlasError::Config(format!(
                    "lift lost monotonicity at x = {} (drop {:.3e})",
                    k as f64 / grid_size as f64,
                    prev - v
                )));
            }
        }
        values.push(v);
    }
    let winding = values[grid_size] - values[0];
    if (winding - 2.0).abs() > 1e-9 {
        return Err(AtlasError::Config(format!(
            "lift winding {winding}, expected 2"
        )));
    }
    values[grid_size] = values[0] + 2.0;
    Ok(LiftTable {
        param: *p,
        grid_size,
        values,
        base_anchor: anchor,
    })
}

/// F^depth(x), each step through the exact angle formula.
pub fn lift_iterate(lift: &LiftTable, x: f64, depth: u32) -> f64 {
    let mut v = x;
    for _ in 0..depth {
        v = lift.eval_exact(v);
    }
    v
}

/// H_depth = F^depth / 2^depth on the lift's grid, anchored to H(0) ∈ [0, 1),
/// together with the conjugacy defect max |H(F(x)) − 2H(x)| (nearest-integer
/// reduced, since the anchor shifts the functional equation by an integer).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SemiconjugacySample {
    pub depth: u32,
    /// Anchored H values aligned with the lift's grid points.
    pub values: Vec<f64>,
    pub defect: f64,
    shift: f64,
}

impl SemiconjugacySample {
    /// Anchored H_depth at an arbitrary point.
    pub fn eval_h(&self, lift: &LiftTable, x: f64) -> f64 {
        lift_iterate(lift, x, self.depth) / 2f64.powi(self.depth as i32) - self.shift
    }
}

pub fn semiconjugacy(
    p: &BlaschkeParam,
    lift: &LiftTable,
    depth: u32,
) -> Result<SemiconjugacySample, AtlasError> {
    if p.a() != lift.parameter().a() {
        return Err(AtlasError::Config(
            "lift was built for a different parameter".into(),
        ));
    }
    if depth == 0 {
        return Err(AtlasError::Config("semiconjugacy depth must be ≥ 1".into()));
    }
    if depth > MAX_DEPTH {
        return Err(AtlasError::Config(format!(
            "semiconjugacy depth {depth} exceeds double-precision limit {MAX_DEPTH}"
        )));
    }
    let pow = 2f64.powi(depth as i32);
    let n = lift.grid_size();
    let raw: Vec<f64> = (0..=n)
        .map(|k| lift_iterate(lift, lift.x(k), depth) / pow)
        .collect();
    let shift = raw[0].floor();
    let mut values = Vec::with_capacity(n + 1);
    let mut prev = f64::NEG_INFINITY;
    for &r in &raw {
        // Path roundoff (~1e-14) may dent the true monotone profile; clamp.
        let v = (r - shift).max(prev);
        values.push(v);
        prev = v;
    }
    let mut defect = 0.0f64;
    for (&fx, &r) in lift.values().iter().zip(&raw) {
        let h_fx = lift_iterate(lift, fx, depth) / pow;
        let d = h_fx - 2.0 * r;
        defect = defect.max((d - d.round()).abs());
    }
    Ok(SemiconjugacySample {
        depth,
        values,
        defect,
        shift,
    })
}

/// Verdict of the circle-cycle test behind the parameter tongues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TongueVerdict {
    pub in_tongue: bool,
    /// The critical orbit ran out of budget; `in_tongue` then defaults false.
    pub undecided: bool,
}

/// A parameter with |a| ≥ 2 lies in a tongue iff the free critical orbit of
/// c_plus settles on an attracting cycle of the circle itself.
pub fn tongue_membership(p: &BlaschkeParam, spec: &OrbitSpec) -> Result<TongueVerdict, AtlasError> {
    if p.modulus() < 2.0 {
        return Err(AtlasError::LiftUndefined(p.modulus()));
    }
    let cd = family::critical_points(p)?;
    let fate = orbit::classify_fate(p, cd.c_plus.into(), spec);
    let in_tongue = fate
        .attracting_cycle()
        .map(|rec| rec.on_circle)
        .unwrap_or(false);
    let undecided = matches!(fate.tag, orbit::FateTag::Undecided);
    Ok(TongueVerdict {
        in_tongue,
        undecided,
    })
}
