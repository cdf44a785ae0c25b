//! The multiplier map Λ on disjoint hyperbolic components: evaluate it,
//! invert it (solve Λ(a) = λ), and locate superattracting centers.
//!
//! B_a does not depend holomorphically on a (the formula involves ā), so
//! every solve is a genuine 2-real-variable Newton iteration with a central
//! finite-difference Jacobian, protected by homotopy continuation from the
//! seed's multiplier to the target.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::atlas::{classify_parameter, Label};
use crate::error::AtlasError;
use crate::family::{self, BlaschkeParam};
use crate::numerics;
use crate::orbit::{composite_pair, orbit_segment, polish_cycle, BlaschkeMap, OrbitSpec};

pub const SOLVE_TOL: f64 = 1e-10;
pub const COND_LIMIT: f64 = 1e8;
/// Homotopy legs start at 1/8 of the segment and subdivide to at most this
/// many attempts in total.
pub const MAX_LEGS: usize = 32;

/// Outcome of a successful multiplier solve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub a_star: Complex64,
    pub target: Complex64,
    /// Multiplier re-measured at a_star by an independent classification.
    pub achieved: Complex64,
    pub residual: f64,
    /// Newton iterations summed over all homotopy legs.
    pub steps: usize,
    pub jacobian_conditioning: f64,
}

/// Multiplier of the attracting cycle reached by c_plus at a.
pub fn multiplier_at(a: Complex64, spec: &OrbitSpec) -> Result<Complex64, AtlasError> {
    let record = classify_parameter(a, spec);
    record
        .cycle_plus
        .as_ref()
        .filter(|c| c.is_attracting())
        .map(|c| c.multiplier)
        .ok_or(AtlasError::OutsideHyperbolicComponent(a))
}

/// Cycle-continued multiplier: polish the period-p cycle at the new
/// parameter from the previous cycle point, rejecting period collapse.
fn multiplier_tracked(
    a: Complex64,
    z_seed: Complex64,
    period: usize,
) -> Option<(Complex64, Complex64)> {
    let p = BlaschkeParam::new(a);
    if p.is_degenerate() {
        return None;
    }
    let map = BlaschkeMap(&p);
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

/// Validate that the seed sits in a disjoint component above modulus 2 and
/// return its attracting cycle.
fn disjoint_seed(
    a_seed: Complex64,
    spec: &OrbitSpec,
) -> Result<crate::orbit::CycleRecord, AtlasError> {
    if a_seed.norm() <= 2.0 {
        return Err(AtlasError::Config(format!(
            "multiplier solves require |a| > 2, got |a| = {:.6}",
            a_seed.norm()
        )));
    }
    let record = classify_parameter(a_seed, spec);
    if !matches!(record.label, Label::Disjoint | Label::SwappingDisjoint) {
        return Err(AtlasError::Config(format!(
            "seed a = {a_seed} is not in a disjoint component (classified {})",
            record.label
        )));
    }
    record
        .cycle_plus
        .filter(|c| c.is_attracting())
        .ok_or(AtlasError::OutsideHyperbolicComponent(a_seed))
}

/// Solve Λ(a) = λ_target from a_seed by homotopy continuation along the
/// multiplier segment, holding the cycle period fixed.
pub fn solve_multiplier(
    a_seed: Complex64,
    lambda_target: Complex64,
    spec: &OrbitSpec,
) -> Result<SolveReport, AtlasError> {
    if lambda_target.norm() >= 1.0 {
        return Err(AtlasError::Config(format!(
            "target multiplier must lie in the open unit disk, got |λ| = {:.6}",
            lambda_target.norm()
        )));
    }
    let seed_cycle = disjoint_seed(a_seed, spec)?;
    let period = seed_cycle.period;
    let lambda_seed = seed_cycle.multiplier;
    let mut z_cur = seed_cycle.points[0];
    let mut a_cur = a_seed;
    let mut steps = 0;
    let mut worst_cond = 0.0f64;
    let mut t_done = 0.0f64;
    let mut dt = 0.125f64;
    let mut legs = 0;
    while t_done < 1.0 {
        if legs >= MAX_LEGS {
            return Err(AtlasError::SolveFailed {
                steps,
                reason: format!("homotopy exceeded {MAX_LEGS} legs"),
                residual: (multiplier_tracked(a_cur, z_cur, period)
                    .map(|(l, _)| l)
                    .unwrap_or(lambda_seed)
                    - lambda_target)
                    .norm(),
            });
        }
        legs += 1;
        let t_next = (t_done + dt).min(1.0);
        let leg_target = lambda_seed + (lambda_target - lambda_seed) * t_next;
        let mut f = |a: Complex64| {
            multiplier_tracked(a, z_cur, period).map(|(lam, z)| {
                z_cur = z;
                lam
            })
        };
        let out = numerics::newton2(&mut f, a_cur, leg_target, SOLVE_TOL, 40, COND_LIMIT);
        steps += out.iterations;
        worst_cond = worst_cond.max(out.conditioning);
        if out.conditioning > COND_LIMIT {
            return Err(AtlasError::SolveFailed {
                steps,
                reason: format!("jacobian conditioning {:.3e} over limit", out.conditioning),
                residual: out.residual,
            });
        }
        if out.converged {
            a_cur = out.x;
            t_done = t_next;
        } else {
            dt /= 2.0;
            if dt < 1.0 / MAX_LEGS as f64 {
                return Err(AtlasError::SolveFailed {
                    steps,
                    reason: "newton stagnated on a minimal homotopy leg".into(),
                    residual: out.residual,
                });
            }
        }
    }
    // Measure the result through an independent classification rather than
    // trusting the continued cycle.
    let achieved = multiplier_at(a_cur, spec)?;
    let residual = (achieved - lambda_target).norm();
    if residual >= 1e-8 {
        return Err(AtlasError::SolveFailed {
            steps,
            reason: "independent re-measurement disagrees with the solve".into(),
            residual,
        });
    }
    Ok(SolveReport {
        a_star: a_cur,
        target: lambda_target,
        achieved,
        residual,
        steps,
        jacobian_conditioning: worst_cond,
    })
}

/// Locate the superattracting center of the component by solving
/// B_a^p(c_plus(a)) = c_plus(a) directly — sharper than Λ(a) = 0 because the
/// critical orbit relation is regular at the root while Λ is quadratically
/// flat there.
pub fn find_superattracting(
    a_seed: Complex64,
    period: usize,
    spec: &OrbitSpec,
) -> Result<SolveReport, AtlasError> {
    let seed_cycle = disjoint_seed(a_seed, spec)?;
    if seed_cycle.period != period {
        return Err(AtlasError::PeriodChanged {
            expected: period,
            found: seed_cycle.period,
        });
    }
    let mut f = |a: Complex64| -> Option<Complex64> {
        let p = BlaschkeParam::new(a);
        if p.is_degenerate() {
            return None;
        }
        let cd = family::critical_points(&p).ok()?;
        let mut z = cd.c_plus;
        for _ in 0..period {
            z = family::eval_finite(&p, z).finite()?;
        }
        Some(z - cd.c_plus)
    };
    let out = numerics::newton2(
        &mut f,
        a_seed,
        Complex64::new(0.0, 0.0),
        1e-13,
        60,
        COND_LIMIT,
    );
    if !out.converged && out.residual > 1e-10 {
        return Err(AtlasError::SolveFailed {
            steps: out.iterations,
            reason: "critical-orbit newton did not close the cycle".into(),
            residual: out.residual,
        });
    }
    let record = classify_parameter(out.x, spec);
    let cycle = record
        .cycle_plus
        .as_ref()
        .filter(|c| c.is_attracting())
        .ok_or(AtlasError::OutsideHyperbolicComponent(out.x))?;
    if cycle.period != period {
        return Err(AtlasError::PeriodChanged {
            expected: period,
            found: cycle.period,
        });
    }
    Ok(SolveReport {
        a_star: out.x,
        target: Complex64::new(0.0, 0.0),
        achieved: cycle.multiplier,
        residual: cycle.multiplier.norm(),
        steps: out.iterations,
        jacobian_conditioning: out.conditioning,
    })
}
