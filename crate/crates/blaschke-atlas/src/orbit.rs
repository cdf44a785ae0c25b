//! Orbit iteration and fate classification for the Blaschke family (and,
//! through the same engine, for the comparison polynomial families).
//!
//! The classifier iterates with hard escape traps, then hunts for attracting
//! cycles by near-return detection: after a warmup it records a base point,
//! scans for returns within `eps_cycle`, confirms a candidate period on two
//! consecutive equally spaced returns, and polishes the cycle with a damped
//! Newton step on B^p(z) - z = 0 before measuring the multiplier.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::AtlasError;
use crate::family::{self, BlaschkeParam, ExtComplex};

pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Per-pixel budget for plane grids.
pub const GRID_MAX_ITER: usize = 5_000;
pub const DEFAULT_EPS_CYCLE: f64 = 1e-9;
pub const DEFAULT_EPS_CIRCLE: f64 = 1e-6;
pub const DEFAULT_ESCAPE_FACTOR: f64 = 2.0;
pub const DEFAULT_WARMUP: usize = 200;
/// Longest candidate period the return scan considers before rebasing.
pub const PERIOD_WINDOW: usize = 512;
/// Cycles with contraction modulus within this band of 1 are reported as
/// parabolic-suspect and never as attracting.
pub const PARABOLIC_BAND: f64 = 1e-3;

/// Iteration budget and tolerances for fate classification.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitSpec {
    pub max_iter: usize,
    /// Near-return and cycle-closure tolerance.
    pub eps_cycle: f64,
    /// Dead band around the unit circle for crossing counts and on-circle tests.
    pub eps_circle: f64,
    /// λ in the escape radius λ(|a|+1); the reflected trap sits at its reciprocal.
    pub escape_factor: f64,
    /// Iterations discarded before the first return scan.
    pub warmup: usize,
}

impl Default for OrbitSpec {
    fn default() -> Self {
        OrbitSpec {
            max_iter: DEFAULT_MAX_ITER,
            eps_cycle: DEFAULT_EPS_CYCLE,
            eps_circle: DEFAULT_EPS_CIRCLE,
            escape_factor: DEFAULT_ESCAPE_FACTOR,
            warmup: DEFAULT_WARMUP,
        }
    }
}

impl OrbitSpec {
    /// Cheaper budget used for every pixel of a plane grid.
    pub fn for_grid() -> Self {
        OrbitSpec {
            max_iter: GRID_MAX_ITER,
            ..OrbitSpec::default()
        }
    }

    pub fn escape_radius(&self, param_modulus: f64) -> f64 {
        self.escape_factor * (param_modulus + 1.0)
    }
}

/// A polished attracting (or parabolic-suspect) cycle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub period: usize,
    /// The cycle in dynamical order, starting at the polished representative.
    pub points: Vec<Complex64>,
    /// Holomorphic multiplier for analytic maps; for antiholomorphic maps the
    /// ∂/∂z̄ derivative of the period-fold composite (its modulus is the
    /// contraction rate either way).
    pub multiplier: Complex64,
    /// Contraction modulus within `PARABOLIC_BAND` of 1.
    pub parabolic_suspect: bool,
    /// Every point within `eps_circle` of the unit circle.
    pub on_circle: bool,
    /// The reflection z ↦ 1/z̄ permutes the cycle's point set.
    pub self_symmetric: bool,
    /// k such that reflect(points[k]) ≈ points[0]; present only for
    /// self-symmetric cycles off the circle, where period = 2k.
    pub half_period: Option<usize>,
    /// One char per point: '1' strictly inside the unit disk, '0' otherwise.
    pub disk_pattern: String,
}

impl CycleRecord {
    pub fn is_attracting(&self) -> bool {
        !self.parabolic_suspect
    }

    pub fn contraction(&self) -> f64 {
        self.multiplier.norm()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum FateTag {
    /// Entered the reflected trap |z| < 1/R: attracted to the superattracting
    /// fixed point 0 (for polynomials: to a superattracting cycle at 0).
    EscapeZero,
    /// Left the escape radius |z| > R (or hit the point at infinity).
    EscapeInf,
    Cycle(CycleRecord),
    Undecided,
}

/// Classification of one orbit, with its unit-circle crossing history.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fate {
    pub tag: FateTag,
    pub iterations_used: usize,
    /// Strict outside→inside crossings of the unit circle (dead band `eps_circle`).
    pub entered_disk: usize,
    /// Strict inside→outside crossings.
    pub left_disk: usize,
}

impl Fate {
    pub fn cycle(&self) -> Option<&CycleRecord> {
        match &self.tag {
            FateTag::Cycle(rec) => Some(rec),
            _ => None,
        }
    }

    pub fn attracting_cycle(&self) -> Option<&CycleRecord> {
        self.cycle().filter(|rec| rec.is_attracting())
    }
}

/// One iterable complex map, seen through its Wirtinger derivative pair so
/// the same engine serves analytic and antianalytic families.
pub(crate) trait IteratedMap {
    /// One application; `None` is the point at infinity.
    fn step(&self, z: Complex64) -> Option<Complex64>;
    /// (∂f/∂z, ∂f/∂z̄) at z, when defined and finite.
    fn wirtinger(&self, z: Complex64) -> Option<(Complex64, Complex64)>;
}

pub(crate) struct BlaschkeMap<'a>(pub &'a BlaschkeParam);

impl IteratedMap for BlaschkeMap<'_> {
    fn step(&self, z: Complex64) -> Option<Complex64> {
        family::eval_finite(self.0, z).finite()
    }

    fn wirtinger(&self, z: Complex64) -> Option<(Complex64, Complex64)> {
        family::derivative(self.0, z)
            .ok()
            .map(|d| (d, Complex64::new(0.0, 0.0)))
    }
}

/// Escape traps and circle bookkeeping for one engine run.
pub(crate) struct TrapSpec {
    pub outward: f64,
    pub inward: Option<f64>,
    /// Count unit-circle crossings and evaluate reflection symmetry of cycles.
    pub circle_geometry: bool,
    /// Renormalize every iterate back onto the unit circle. Used when the
    /// start point lies on the (invariant) circle so that transversal
    /// round-off cannot push a genuinely one-dimensional orbit off of it.
    pub project_to_circle: bool,
}

/// Wirtinger pair of the n-fold composite along `points`, starting from the
/// identity: returns (∂/∂z, ∂/∂z̄) of map^n at points[0].
pub(crate) fn composite_pair<M: IteratedMap>(
    map: &M,
    points: &[Complex64],
) -> Option<(Complex64, Complex64)> {
    let mut u = Complex64::new(1.0, 0.0);
    let mut v = Complex64::new(0.0, 0.0);
    for &z in points {
        let (dz, dzb) = map.wirtinger(z)?;
        let (nu, nv) = (dz * u + dzb * v.conj(), dz * v + dzb * u.conj());
        u = nu;
        v = nv;
    }
    Some((u, v))
}

/// points[0..p] of the forward orbit plus the p-th image.
pub(crate) fn orbit_segment<M: IteratedMap>(
    map: &M,
    z: Complex64,
    p: usize,
) -> Option<(Vec<Complex64>, Complex64)> {
    let mut pts = Vec::with_capacity(p);
    let mut w = z;
    for _ in 0..p {
        pts.push(w);
        w = map.step(w)?;
        if !w.is_finite() {
            return None;
        }
    }
    Some((pts, w))
}

/// Damped Newton polish of map^p(z) = z from `start`. Returns the polished
/// cycle points and the closure gap |map^p(z*) - z*|.
pub(crate) fn polish_cycle<M: IteratedMap>(
    map: &M,
    start: Complex64,
    p: usize,
) -> Option<(Vec<Complex64>, f64)> {
    let mut z = start;
    let (mut pts, mut image) = orbit_segment(map, z, p)?;
    let mut gap = (image - z).norm();
    for _ in 0..40 {
        let scale = z.norm().max(1.0);
        if gap <= 1e-13 * scale {
            break;
        }
        let (u, v) = composite_pair(map, &pts)?;
        let g = image - z;
        // Solve (U-1)δ + Vδ̄ = -G for the full Wirtinger linearization.
        let a = u - Complex64::new(1.0, 0.0);
        let denom = a.norm_sqr() - v.norm_sqr();
        if denom == 0.0 || !denom.is_finite() {
            return None;
        }
        let full = (v * g.conj() - g * a.conj()) / denom;
        if !full.is_finite() {
            return None;
        }
        let mut advanced = false;
        let mut damp = 1.0;
        for _ in 0..10 {
            let cand = z + damp * full;
            if let Some((cand_pts, cand_image)) = orbit_segment(map, cand, p) {
                let cand_gap = (cand_image - cand).norm();
                if cand_gap < gap {
                    z = cand;
                    pts = cand_pts;
                    image = cand_image;
                    gap = cand_gap;
                    advanced = true;
                    break;
                }
            }
            damp *= 0.5;
        }
        if !advanced {
            break;
        }
    }
    Some((pts, gap))
}

/// Reflection structure of a numerically closed cycle: whether 1/z̄ permutes
/// its point set, and the half-period shift when it does so off the circle.
pub fn cycle_symmetry(points: &[Complex64], eps: f64) -> (bool, Option<usize>) {
    let p = points.len();
    if p == 0 || points.iter().any(|z| z.norm() < 1e-100) {
        return (false, None);
    }
    let reflected: Vec<Complex64> = points.iter().map(|&z| family::reflect_finite(z)).collect();
    let matches = |w: Complex64| points.iter().any(|&q| (w - q).norm() < eps);
    let symmetric = reflected.iter().all(|&w| matches(w));
    if !symmetric {
        return (false, None);
    }
    let on_circle = points.iter().all(|z| (z.norm() - 1.0).abs() < eps);
    if on_circle {
        // Reflection fixes the circle pointwise; there is no shift.
        return (true, None);
    }
    let half = (1..p).find(|&k| (reflected[k] - points[0]).norm() < eps);
    match half {
        Some(k) if 2 * k == p => (true, Some(k)),
        _ => (true, None),
    }
}

/// Multiplier of a user-supplied cycle: the product of derivatives along it,
/// after validating that B maps each point to the next within `eps_cycle`.
pub fn cycle_multiplier(p: &BlaschkeParam, points: &[Complex64]) -> Result<Complex64, AtlasError> {
    let spec = OrbitSpec::default();
    let n = points.len();
    if n == 0 {
        return Err(AtlasError::CycleNotClosed {
            gap: f64::INFINITY,
            tol: spec.eps_cycle,
        });
    }
    let mut mult = Complex64::new(1.0, 0.0);
    for i in 0..n {
        let next = points[(i + 1) % n];
        let image = family::eval_finite(p, points[i])
            .finite()
            .unwrap_or(Complex64::new(f64::INFINITY, 0.0));
        let gap = (image - next).norm();
        let tol = spec.eps_cycle * next.norm().max(1.0);
        if gap.is_nan() || gap > tol {
            return Err(AtlasError::CycleNotClosed { gap, tol });
        }
        mult *= family::derivative(p, points[i])?;
    }
    Ok(mult)
}

struct CircleTracker {
    enabled: bool,
    dead_band: f64,
    side: i8,
    entered: usize,
    left: usize,
}

impl CircleTracker {
    fn new(enabled: bool, dead_band: f64, z0: Complex64) -> Self {
        let mut t = CircleTracker {
            enabled,
            dead_band,
            side: 0,
            entered: 0,
            left: 0,
        };
        t.side = t.classify(z0);
        t
    }

    fn classify(&self, z: Complex64) -> i8 {
        let m = z.norm();
        if m > 1.0 + self.dead_band {
            1
        } else if m < 1.0 - self.dead_band {
            -1
        } else {
            0
        }
    }

    fn observe(&mut self, z: Complex64) {
        if !self.enabled {
            return;
        }
        let s = self.classify(z);
        if s == 0 {
            return;
        }
        if self.side != 0 && s != self.side {
            if s == -1 {
                self.entered += 1;
            } else {
                self.left += 1;
            }
        }
        self.side = s;
    }
}

enum StepOutcome {
    Continue,
    Done(FateTag),
}

struct Engine<'m, M: IteratedMap> {
    map: &'m M,
    spec: &'m OrbitSpec,
    traps: &'m TrapSpec,
    z: Complex64,
    iters: usize,
    tracker: CircleTracker,
}

impl<'m, M: IteratedMap> Engine<'m, M> {
    fn trap(&self, z: Complex64) -> Option<FateTag> {
        if self.traps.project_to_circle {
            return None;
        }
        if z.norm() > self.traps.outward {
            return Some(FateTag::EscapeInf);
        }
        if let Some(inner) = self.traps.inward {
            if z.norm() < inner {
                return Some(FateTag::EscapeZero);
            }
        }
        None
    }

    fn advance(&mut self) -> StepOutcome {
        let next = match self.map.step(self.z) {
            Some(w) if w.is_finite() => w,
            _ => return StepOutcome::Done(FateTag::EscapeInf),
        };
        let next = if self.traps.project_to_circle {
            let m = next.norm();
            if m == 0.0 || !m.is_finite() {
                return StepOutcome::Done(FateTag::Undecided);
            }
            next / m
        } else {
            next
        };
        self.z = next;
        self.iters += 1;
        self.tracker.observe(next);
        match self.trap(next) {
            Some(tag) => StepOutcome::Done(tag),
            None => StepOutcome::Continue,
        }
    }

    /// Validate a confirmed candidate period: polish, minimalize the period,
    /// and accept only non-repelling cycles.
    fn resolve_cycle(&self, candidate: usize) -> Option<CycleRecord> {
        let (pts, gap) = polish_cycle(self.map, self.z, candidate)?;
        let z_star = pts[0];
        let scale = z_star.norm().max(1.0);
        if gap > 1e-9 * scale {
            return None;
        }
        // Reduce to the minimal period among divisors.
        let mut period = candidate;
        let mut points = pts;
        for d in 1..candidate {
            if !candidate.is_multiple_of(d) {
                continue;
            }
            if let Some((dpts, dimage)) = orbit_segment(self.map, z_star, d) {
                if (dimage - z_star).norm() < 1e-9 * scale {
                    period = d;
                    points = dpts;
                    break;
                }
            }
        }
        let (u, v) = composite_pair(self.map, &points)?;
        let contraction = u.norm().max(v.norm());
        if !contraction.is_finite() || contraction > 1.0 + PARABOLIC_BAND {
            return None; // repelling: a chance near-return, not an attractor
        }
        let multiplier = if v.norm() > u.norm() { v } else { u };
        let parabolic_suspect = contraction >= 1.0 - PARABOLIC_BAND;
        let on_circle = points
            .iter()
            .all(|z| (z.norm() - 1.0).abs() < self.spec.eps_circle);
        let (self_symmetric, half_period) = if self.traps.circle_geometry {
            cycle_symmetry(&points, self.spec.eps_circle.max(100.0 * self.spec.eps_cycle))
        } else {
            (false, None)
        };
        let disk_pattern = points
            .iter()
            .map(|z| if z.norm() < 1.0 { '1' } else { '0' })
            .collect();
        Some(CycleRecord {
            period,
            points,
            multiplier,
            parabolic_suspect,
            on_circle,
            self_symmetric,
            half_period,
            disk_pattern,
        })
    }

    fn run(&mut self) -> Fate {
        let finish = |tag: FateTag, engine: &Engine<'m, M>| Fate {
            tag,
            iterations_used: engine.iters,
            entered_disk: engine.tracker.entered,
            left_disk: engine.tracker.left,
        };
        if let Some(tag) = self.trap(self.z) {
            return finish(tag, self);
        }
        while self.iters < self.spec.warmup.min(self.spec.max_iter) {
            if let StepOutcome::Done(tag) = self.advance() {
                return finish(tag, self);
            }
        }
        'rebase: while self.iters < self.spec.max_iter {
            let base = self.z;
            let mut last_return: Option<usize> = None;
            let mut gap_candidate: Option<usize> = None;
            let mut k = 0;
            while k < PERIOD_WINDOW && self.iters < self.spec.max_iter {
                k += 1;
                match self.advance() {
                    StepOutcome::Done(tag) => return finish(tag, self),
                    StepOutcome::Continue => {}
                }
                if (self.z - base).norm() >= self.spec.eps_cycle {
                    continue;
                }
                let confirmed = match (last_return, gap_candidate) {
                    (None, _) => {
                        last_return = Some(k);
                        None
                    }
                    (Some(r), None) => {
                        let g = k - r;
                        if g == r {
                            Some(r)
                        } else {
                            gap_candidate = Some(g);
                            last_return = Some(k);
                            None
                        }
                    }
                    (Some(r), Some(g0)) => {
                        let g = k - r;
                        if g == g0 {
                            Some(g0)
                        } else {
                            gap_candidate = Some(g);
                            last_return = Some(k);
                            None
                        }
                    }
                };
                if let Some(period) = confirmed {
                    if let Some(record) = self.resolve_cycle(period) {
                        return finish(FateTag::Cycle(record), self);
                    }
                    continue 'rebase; // spurious: rebase from the current point
                }
            }
        }
        finish(FateTag::Undecided, self)
    }
}

pub(crate) fn run_engine<M: IteratedMap>(
    map: &M,
    z0: Complex64,
    spec: &OrbitSpec,
    traps: &TrapSpec,
) -> Fate {
    let z0 = if traps.project_to_circle {
        let m = z0.norm();
        if m > 0.0 && m.is_finite() {
            z0 / m
        } else {
            z0
        }
    } else {
        z0
    };
    let mut engine = Engine {
        map,
        spec,
        traps,
        z: z0,
        iters: 0,
        tracker: CircleTracker::new(traps.circle_geometry, spec.eps_circle, z0),
    };
    engine.run()
}

/// Classify the forward orbit of z0 under B_a.
///
/// Start points on the invariant unit circle (within `eps_circle`) are
/// iterated with per-step renormalization back onto the circle, since their
/// true orbits live there and transversal round-off would otherwise launch
/// them into a basin they never belonged to.
pub fn classify_fate(p: &BlaschkeParam, z0: ExtComplex, spec: &OrbitSpec) -> Fate {
    let z0 = match z0 {
        ExtComplex::Infinity => {
            return Fate {
                tag: FateTag::EscapeInf,
                iterations_used: 0,
                entered_disk: 0,
                left_disk: 0,
            }
        }
        ExtComplex::Finite(z) => z,
    };
    let radius = spec.escape_radius(p.modulus());
    let traps = TrapSpec {
        outward: radius,
        inward: Some(radius.recip()),
        circle_geometry: true,
        project_to_circle: (z0.norm() - 1.0).abs() <= spec.eps_circle,
    };
    run_engine(&BlaschkeMap(p), z0, spec, &traps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::critical_points;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn param(re: f64, im: f64) -> BlaschkeParam {
        BlaschkeParam::new(c(re, im))
    }

    #[test]
    fn interior_point_below_inner_trap_escapes_to_zero() {
        let fate = classify_fate(&param(0.5, 0.0), c(0.3, 0.0).into(), &OrbitSpec::default());
        assert_eq!(fate.tag, FateTag::EscapeZero);
        // |0.3| is already below 1/R = 1/3.
        assert_eq!(fate.iterations_used, 0);
    }

    #[test]
    fn origin_and_infinity_are_immediate() {
        let spec = OrbitSpec::default();
        let fate = classify_fate(&param(4.0, 0.0), c(0.0, 0.0).into(), &spec);
        assert_eq!(fate.tag, FateTag::EscapeZero);
        let fate = classify_fate(&param(4.0, 0.0), ExtComplex::Infinity, &spec);
        assert_eq!(fate.tag, FateTag::EscapeInf);
    }

    #[test]
    fn superattracting_fixed_point_at_modulus_two() {
        let fate = classify_fate(&param(2.0, 0.0), c(1.0, 0.0).into(), &OrbitSpec::default());
        let rec = fate.attracting_cycle().expect("attracting cycle");
        assert_eq!(rec.period, 1);
        assert!(rec.on_circle);
        assert!(rec.multiplier.norm() < 1e-12);
        assert!((rec.points[0] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn golden_fixed_point_at_a_four() {
        // B_4 fixes c_+ = (3+√5)/2 exactly: a superattracting fixed point.
        let p = param(4.0, 0.0);
        let cd = critical_points(&p).unwrap();
        let fate = classify_fate(&p, cd.c_plus.into(), &OrbitSpec::default());
        let rec = fate.attracting_cycle().expect("attracting cycle");
        assert_eq!(rec.period, 1);
        assert!(!rec.on_circle);
        assert!(!rec.self_symmetric);
        assert_eq!(rec.half_period, None);
        assert_eq!(rec.disk_pattern, "0");
        assert!(rec.multiplier.norm() < 1e-10);
        assert!((rec.points[0] - c(2.618033988749895, 0.0)).norm() < 1e-10);
        // The mirror critical orbit lands on the reflected fixed point.
        let fate_m = classify_fate(&p, cd.c_minus.into(), &OrbitSpec::default());
        let rec_m = fate_m.attracting_cycle().unwrap();
        assert_eq!(rec_m.period, 1);
        assert_eq!(rec_m.disk_pattern, "1");
        assert!((rec_m.points[0] - c(0.3819660112501051, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn exterior_two_cycle_at_five_and_a_quarter() {
        let p = param(5.25, 0.0);
        let cd = critical_points(&p).unwrap();
        let fate = classify_fate(&p, cd.c_plus.into(), &OrbitSpec::default());
        let rec = fate.attracting_cycle().expect("attracting cycle");
        assert_eq!(rec.period, 2);
        assert!(!rec.on_circle);
        assert_eq!(rec.disk_pattern, "00");
        assert_eq!(fate.entered_disk, 0);
        // Frozen from an independent power-iteration oracle (below).
        assert!((rec.multiplier - c(-0.026208938559, 0.0)).norm() < 1e-9);

        // Oracle: iterate 3000 raw steps with no polish, then read the
        // multiplier straight off two consecutive orbit points.
        let mut z = cd.c_plus;
        for _ in 0..3000 {
            z = family::eval_finite(&p, z).finite().unwrap();
        }
        let z2 = family::eval_finite(&p, z).finite().unwrap();
        let raw_mult =
            family::derivative(&p, z).unwrap() * family::derivative(&p, z2).unwrap();
        assert!((raw_mult - rec.multiplier).norm() < 1e-9);

        // Independent interior orbit: conjugate multiplier within 1e-9.
        let fate_m = classify_fate(&p, cd.c_minus.into(), &OrbitSpec::default());
        let rec_m = fate_m.attracting_cycle().unwrap();
        assert_eq!(rec_m.period, 2);
        assert_eq!(rec_m.disk_pattern, "11");
        assert!((rec_m.multiplier - rec.multiplier.conj()).norm() < 1e-9);
    }

    #[test]
    fn circle_cycle_for_interior_modulus() {
        // a = 1.5: both free critical points sit on the circle and share a
        // period-2 attracting cycle there.
        let p = param(1.5, 0.0);
        let cd = critical_points(&p).unwrap();
        let fate = classify_fate(&p, cd.c_plus.into(), &OrbitSpec::default());
        let rec = fate.attracting_cycle().expect("attracting cycle");
        assert_eq!(rec.period, 2);
        assert!(rec.on_circle);
        assert!(rec.self_symmetric, "circle cycles are reflection-fixed");
        assert_eq!(rec.half_period, None);
        assert_eq!(fate.entered_disk, 0);
        assert!((rec.multiplier - c(0.130981892129, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn escaping_critical_orbit_never_entering_disk() {
        let p = param(-0.87, 2.05333);
        let cd = critical_points(&p).unwrap();
        let fate = classify_fate(&p, cd.c_plus.into(), &OrbitSpec::default());
        assert_eq!(fate.tag, FateTag::EscapeInf);
        assert_eq!(fate.entered_disk, 0);
        assert!(fate.iterations_used < 100);
    }

    #[test]
    fn chaotic_circle_parameter_stays_undecided() {
        let p = param(0.0, 1.5);
        let cd = critical_points(&p).unwrap();
        let spec = OrbitSpec::default();
        let fate = classify_fate(&p, cd.c_plus.into(), &spec);
        assert_eq!(fate.tag, FateTag::Undecided);
        assert_eq!(fate.iterations_used, spec.max_iter);
    }

    #[test]
    fn swapping_bitransitive_cycle_structure() {
        let p = param(-3.22271, 5.58189);
        let cd = critical_points(&p).unwrap();
        let fate = classify_fate(&p, cd.c_plus.into(), &OrbitSpec::default());
        let rec = fate.attracting_cycle().expect("attracting cycle");
        assert_eq!(rec.period, 6);
        assert!(rec.self_symmetric);
        assert_eq!(rec.half_period, Some(3));
        assert!(fate.entered_disk >= 1);
        let ones = rec.disk_pattern.matches('1').count();
        assert_eq!(ones, 3, "pattern {} straddles the circle", rec.disk_pattern);
        // Reflection-symmetric cycle forces an essentially real multiplier.
        assert!(rec.multiplier.im.abs() < 1e-6);
        assert!(rec.multiplier.re >= -1e-9);
        assert!((rec.multiplier.re - 0.0429637).abs() < 1e-4);
    }

    #[test]
    fn swapping_disjoint_pair_has_conjugate_multipliers() {
        let p = param(-3.22278, 5.58202);
        let cd = critical_points(&p).unwrap();
        let spec = OrbitSpec::default();
        let plus = classify_fate(&p, cd.c_plus.into(), &spec);
        let minus = classify_fate(&p, cd.c_minus.into(), &spec);
        let rp = plus.attracting_cycle().expect("plus cycle");
        let rm = minus.attracting_cycle().expect("minus cycle");
        assert_eq!(rp.period, 6);
        assert_eq!(rm.period, 6);
        assert!(!rp.self_symmetric);
        assert!((rp.multiplier - rm.multiplier.conj()).norm() < 1e-9);
        assert!((rp.multiplier - c(0.0194226, 0.1840383)).norm() < 1e-4);
        assert!(plus.entered_disk >= 1 && plus.left_disk >= 1);
        // Both-sided pattern with period well above the swapping minimum.
        assert!(rp.disk_pattern.contains('1') && rp.disk_pattern.contains('0'));
        assert!(rp.period >= 3);
    }

    #[test]
    fn parabolic_root_is_never_reported_attracting() {
        // a = 3 puts z = 1 at multiplier exactly 1 (root of the period-1 tongue).
        let p = param(3.0, 0.0);
        let cd = critical_points(&p).unwrap();
        let fate = classify_fate(&p, cd.c_plus.into(), &OrbitSpec::default());
        match fate.tag {
            FateTag::Cycle(rec) => {
                assert!(rec.parabolic_suspect);
                assert!((rec.contraction() - 1.0).abs() <= PARABOLIC_BAND);
            }
            FateTag::Undecided => {}
            other => panic!("parabolic parameter produced {other:?}"),
        }
    }

    #[test]
    fn fates_mirror_under_reflection() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        let spec = OrbitSpec::default();
        let mut checked = 0;
        while checked < 300 {
            let a = c(rng.random_range(-6.0..6.0), rng.random_range(-6.0..6.0));
            if a.norm() <= 2.0 {
                continue;
            }
            let z = c(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            if z.norm() < 1e-2 || (z.norm() - 1.0).abs() < 1e-2 {
                continue;
            }
            let p = BlaschkeParam::new(a);
            let fate = classify_fate(&p, z.into(), &spec);
            let mirror = classify_fate(&p, family::reflect(z.into()), &spec);
            match (&fate.tag, &mirror.tag) {
                (FateTag::EscapeInf, FateTag::EscapeZero)
                | (FateTag::EscapeZero, FateTag::EscapeInf)
                | (FateTag::Undecided, FateTag::Undecided) => {}
                (FateTag::Cycle(rec), FateTag::Cycle(mrec)) => {
                    assert_eq!(rec.period, mrec.period, "a={a} z={z}");
                    assert!(
                        (rec.multiplier - mrec.multiplier.conj()).norm() < 1e-6,
                        "a={a} z={z}"
                    );
                }
                (got, mgot) => panic!("a={a} z={z}: {got:?} vs mirror {mgot:?}"),
            }
            checked += 1;
        }
    }

    #[test]
    fn classification_is_deterministic() {
        let p = param(-3.22278, 5.58202);
        let cd = critical_points(&p).unwrap();
        let spec = OrbitSpec::default();
        let one = classify_fate(&p, cd.c_plus.into(), &spec);
        let two = classify_fate(&p, cd.c_plus.into(), &spec);
        assert_eq!(one, two);
        assert_eq!(
            serde_json::to_string(&one).unwrap(),
            serde_json::to_string(&two).unwrap()
        );
    }

    #[test]
    fn cycle_multiplier_validates_closure() {
        let p = param(5.25, 0.0);
        let cd = critical_points(&p).unwrap();
        let fate = classify_fate(&p, cd.c_plus.into(), &OrbitSpec::default());
        let rec = fate.attracting_cycle().unwrap();
        let lam = cycle_multiplier(&p, &rec.points).unwrap();
        assert!((lam - rec.multiplier).norm() < 1e-10);
        // A sabotaged cycle must be rejected.
        let mut bad = rec.points.clone();
        bad[0] += c(1e-3, 0.0);
        assert!(matches!(
            cycle_multiplier(&p, &bad),
            Err(AtlasError::CycleNotClosed { .. })
        ));
    }

    #[test]
    fn symmetry_helper_distinguishes_mirror_pairs() {
        // Unit-circle cycle: symmetric, no half-period shift.
        let w = Complex64::from_polar(1.0, 0.9253);
        let (sym, half) = cycle_symmetry(&[w, w.conj()], 1e-9);
        assert!(sym);
        assert_eq!(half, None);
        // Genuinely mirrored 2-cycle off the circle.
        let z = c(1.4, 0.3);
        let (sym, half) = cycle_symmetry(&[z, family::reflect_finite(z)], 1e-9);
        assert!(sym);
        assert_eq!(half, Some(1));
        // Asymmetric pair.
        let (sym, half) = cycle_symmetry(&[c(3.4594, 0.0), c(4.3195, 0.0)], 1e-9);
        assert!(!sym);
        assert_eq!(half, None);
    }
}
