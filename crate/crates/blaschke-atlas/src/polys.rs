//! Comparison polynomial families: the cubic M_b(z) = bz²(z−1), the
//! antiquadratic p_c(z) = z̄² + c with its square (z² + c̄)² + c, and the
//! quadratic z² + c. They share the orbit engine with the Blaschke family,
//! and the cubic's attracting multipliers can be matched against Blaschke
//! exterior cycles — the two are conformally conjugate on such basins, so
//! equal multipliers are the checkable fingerprint of the correspondence.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::atlas::{classify_parameter, Label, PlaneSpec};
use crate::error::AtlasError;
use crate::numerics;
use crate::orbit::{
    composite_pair, orbit_segment, polish_cycle, run_engine, CycleRecord, Fate, FateTag,
    IteratedMap, OrbitSpec, TrapSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolyFamily {
    /// M_b(z) = bz²(z−1); free critical point 2/3, superattracting 0.
    CubicM,
    /// p_c(z) = z̄² + c (antiholomorphic); free critical point 0.
    AntiquadraticP,
    /// p_c²(z) = (z² + c̄)² + c, the holomorphic square of p_c.
    AntiquadraticSquared,
    /// z² + c.
    Quadratic,
}

impl PolyFamily {
    pub const ALL: [PolyFamily; 4] = [
        PolyFamily::CubicM,
        PolyFamily::AntiquadraticP,
        PolyFamily::AntiquadraticSquared,
        PolyFamily::Quadratic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PolyFamily::CubicM => "cubic",
            PolyFamily::AntiquadraticP => "antiquadratic",
            PolyFamily::AntiquadraticSquared => "antiquadratic-squared",
            PolyFamily::Quadratic => "quadratic",
        }
    }

    /// The critical point whose orbit decides the parameter's class.
    pub fn free_critical_point(self) -> Complex64 {
        match self {
            PolyFamily::CubicM => Complex64::new(2.0 / 3.0, 0.0),
            _ => Complex64::new(0.0, 0.0),
        }
    }
}

impl fmt::Display for PolyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PolyFamily {
    type Err = AtlasError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolyFamily::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| AtlasError::Config(format!("unknown polynomial family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyFamilyMember {
    pub family: PolyFamily,
    pub parameter: Complex64,
}

impl PolyFamilyMember {
    pub fn new(family: PolyFamily, parameter: Complex64) -> Self {
        PolyFamilyMember { family, parameter }
    }
}

pub fn poly_eval(m: &PolyFamilyMember, z: Complex64) -> Complex64 {
    let c = m.parameter;
    match m.family {
        PolyFamily::CubicM => c * z * z * (z - 1.0),
        PolyFamily::AntiquadraticP => z.conj() * z.conj() + c,
        PolyFamily::AntiquadraticSquared => {
            let w = z * z + c.conj();
            w * w + c
        }
        PolyFamily::Quadratic => z * z + c,
    }
}

/// Wirtinger pair (∂f/∂z, ∂f/∂z̄) of the family member at z.
pub fn poly_wirtinger(m: &PolyFamilyMember, z: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let c = m.parameter;
    match m.family {
        PolyFamily::CubicM => (c * z * (3.0 * z - 2.0), zero),
        PolyFamily::AntiquadraticP => (zero, 2.0 * z.conj()),
        PolyFamily::AntiquadraticSquared => (4.0 * z * (z * z + c.conj()), zero),
        PolyFamily::Quadratic => (2.0 * z, zero),
    }
}

pub(crate) struct PolyMap<'a>(pub &'a PolyFamilyMember);

impl IteratedMap for PolyMap<'_> {
    fn step(&self, z: Complex64) -> Option<Complex64> {
        let w = poly_eval(self.0, z);
        w.is_finite().then_some(w)
    }

    fn wirtinger(&self, z: Complex64) -> Option<(Complex64, Complex64)> {
        let (u, v) = poly_wirtinger(self.0, z);
        (u.is_finite() && v.is_finite()).then_some((u, v))
    }
}

/// Escape radius guaranteeing |f(z)| ≥ 2|z| outside it.
///
/// max(4, 2(|param|+1)) covers the degree-2 families for every parameter;
/// the cubic needs the extra 2/√|b| term for small |b|, where bz³ only
/// dominates far out.
fn escape_radius(m: &PolyFamilyMember) -> f64 {
    let base = 4f64.max(2.0 * (m.parameter.norm() + 1.0));
    match m.family {
        PolyFamily::CubicM => base.max(2.0 / m.parameter.norm().sqrt()),
        _ => base,
    }
}

/// Fate of the family's free critical orbit. For the cubic, falling into
/// the superattracting fixed point 0 is reported as `EscapeZero`.
pub fn poly_classify(m: &PolyFamilyMember, spec: &OrbitSpec) -> Fate {
    let inward = match m.family {
        PolyFamily::CubicM => {
            // |M_b(z)| ≤ |b||z|²(1+|z|) < |z| inside this radius.
            Some(0.25f64.min(0.5 / (m.parameter.norm() + 1.0)))
        }
        _ => None,
    };
    let traps = TrapSpec {
        outward: escape_radius(m),
        inward,
        circle_geometry: false,
        project_to_circle: false,
    };
    run_engine(&PolyMap(m), m.family.free_critical_point(), spec, &traps)
}

/// Wirtinger pair of the n-fold composite along a cycle (points in
/// dynamical order); for odd-period antiquadratic cycles the ∂/∂z̄ entry is
/// the antiholomorphic multiplier whose squared modulus drives p_c².
pub fn poly_cycle_pair(
    m: &PolyFamilyMember,
    points: &[Complex64],
) -> Option<(Complex64, Complex64)> {
    composite_pair(&PolyMap(m), points)
}

/// Classification of one pixel of a polynomial parameter plane. The label
/// reuses the atlas vocabulary: escape → escaping-immediate, falling into
/// the superattracting zero basin → disk-escape, an attracting cycle →
/// disjoint, otherwise undecided.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyClassRecord {
    pub family: PolyFamily,
    pub parameter: Complex64,
    pub label: Label,
    pub cycle: Option<CycleRecord>,
    pub iterations: usize,
}

pub fn poly_class_record(m: &PolyFamilyMember, spec: &OrbitSpec) -> PolyClassRecord {
    let fate = poly_classify(m, spec);
    let label = match &fate.tag {
        FateTag::EscapeInf => Label::EscapingImmediate,
        FateTag::EscapeZero => Label::DiskEscape,
        FateTag::Cycle(rec) if rec.is_attracting() => Label::Disjoint,
        _ => Label::Undecided,
    };
    PolyClassRecord {
        family: m.family,
        parameter: m.parameter,
        label,
        cycle: fate.cycle().cloned(),
        iterations: fate.iterations_used,
    }
}

/// Classify every pixel center of a polynomial parameter window, row-major
/// from the top-left; deterministic for any worker count.
pub fn poly_plane_grid(family: PolyFamily, window: &PlaneSpec) -> Vec<PolyClassRecord> {
    let rows: Vec<Vec<PolyClassRecord>> = (0..window.ny)
        .into_par_iter()
        .map(|iy| {
            (0..window.nx)
                .map(|ix| {
                    let m = PolyFamilyMember::new(family, window.pixel(ix, iy));
                    poly_class_record(&m, &window.orbit)
                })
                .collect()
        })
        .collect();
    rows.into_iter().flatten().collect()
}

const MATCH_TOL: f64 = 1e-10;
const MATCH_COND_LIMIT: f64 = 1e8;

/// Attracting-cycle multiplier of M_b continued from a known cycle point:
/// polish the period-p cycle at the new parameter and reject period
/// collapses, so a Newton solve cannot wander onto a different cycle.
fn cubic_multiplier_tracked(
    b: Complex64,
    z_seed: Complex64,
    period: usize,
) -> Option<(Complex64, Complex64)> {
    let member = PolyFamilyMember::new(PolyFamily::CubicM, b);
    let map = PolyMap(&member);
    let (pts, gap) = polish_cycle(&map, z_seed, period)?;
    let scale = pts[0].norm().max(1.0);
    if gap > 1e-9 * scale {
        return None;
    }
    for d in 1..period {
        if period.is_multiple_of(d) {
            if let Some((_, image)) = orbit_segment(&map, pts[0], d) {
                if (image - pts[0]).norm() < 1e-9 * scale {
                    return None;
                }
            }
        }
    }
    let (u, _) = composite_pair(&map, &pts)?;
    Some((u, pts[0]))
}

/// Solve λ_M(b) = λ_target near b_seed, holding the cycle period fixed.
pub fn match_cubic_to_target(
    b_seed: Complex64,
    z_seed: Complex64,
    period: usize,
    lambda_target: Complex64,
    _spec: &OrbitSpec,
) -> Result<(Complex64, f64), AtlasError> {
    let mut z_cur = z_seed;
    let mut f = |b: Complex64| {
        cubic_multiplier_tracked(b, z_cur, period).map(|(lam, z)| {
            z_cur = z;
            lam
        })
    };
    let outcome = numerics::newton2(&mut f, b_seed, lambda_target, MATCH_TOL, 64, MATCH_COND_LIMIT);
    if outcome.converged || outcome.residual < 1e-8 {
        Ok((outcome.x, outcome.residual))
    } else {
        Err(AtlasError::SolveFailed {
            steps: outcome.iterations,
            reason: "cubic multiplier match did not converge".into(),
            residual: outcome.residual,
        })
    }
}

/// Match the cubic family against the attracting exterior cycle of B_a:
/// find b near b_seed whose cycle multiplier equals that of a. Returns
/// (b_star, residual).
pub fn match_cubic_multiplier(
    a: Complex64,
    b_seed: Complex64,
    spec: &OrbitSpec,
) -> Result<(Complex64, f64), AtlasError> {
    let record = classify_parameter(a, spec);
    let target_cycle = record
        .cycle_plus
        .as_ref()
        .filter(|rec| rec.is_attracting())
        .ok_or(AtlasError::OutsideHyperbolicComponent(a))?;
    if !target_cycle
        .points
        .iter()
        .all(|z| z.norm() > 1.0 + spec.eps_circle)
    {
        // The conjugacy only covers basins outside the closed unit disk.
        return Err(AtlasError::OutsideHyperbolicComponent(a));
    }
    let period = target_cycle.period;
    let member = PolyFamilyMember::new(PolyFamily::CubicM, b_seed);
    let seed_fate = poly_classify(&member, spec);
    let seed_cycle = seed_fate
        .attracting_cycle()
        .ok_or_else(|| AtlasError::NoMatchingCycle {
            family: PolyFamily::CubicM.as_str().into(),
            period,
        })?;
    if seed_cycle.period != period {
        return Err(AtlasError::PeriodChanged {
            expected: period,
            found: seed_cycle.period,
        });
    }
    match_cubic_to_target(
        b_seed,
        seed_cycle.points[0],
        period,
        target_cycle.multiplier,
        spec,
    )
}

/// Coarse scan of a b-plane rectangle for a parameter whose free critical
/// orbit reaches an attracting cycle of the requested period; returns the
/// hit with the smallest multiplier modulus (deepest inside its component).
pub fn scan_cubic_seed(
    period: usize,
    re: (f64, f64),
    im: (f64, f64),
    steps: usize,
    spec: &OrbitSpec,
) -> Option<(Complex64, Complex64)> {
    let mut best: Option<(Complex64, Complex64)> = None;
    for i in 0..steps {
        for j in 0..steps {
            let b = Complex64::new(
                re.0 + (i as f64 + 0.5) * (re.1 - re.0) / steps as f64,
                im.0 + (j as f64 + 0.5) * (im.1 - im.0) / steps as f64,
            );
            let member = PolyFamilyMember::new(PolyFamily::CubicM, b);
            if let Some(rec) = poly_classify(&member, spec).attracting_cycle() {
                if rec.period == period {
                    let better = best
                        .map(|(_, lam)| rec.multiplier.norm() < lam.norm())
                        .unwrap_or(true);
                    if better {
                        best = Some((b, rec.multiplier));
                    }
                }
            }
        }
    }
    best
}
