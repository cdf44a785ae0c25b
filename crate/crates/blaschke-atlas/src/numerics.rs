//! Small dense-2x2 numerics used by the multiplier solvers: central
//! finite-difference Jacobians of maps C -> C viewed as R^2 -> R^2,
//! conditioning estimates, and a damped Newton iteration.

use num_complex::Complex64;

/// Jacobian of f at x as (f_x, f_y): images of the two real coordinate
/// directions under a central difference with the given step.
pub fn central_jacobian<F>(f: &mut F, x: Complex64, step: f64) -> Option<(Complex64, Complex64)>
where
    F: FnMut(Complex64) -> Option<Complex64>,
{
    let re = Complex64::new(step, 0.0);
    let im = Complex64::new(0.0, step);
    let fxp = f(x + re)?;
    let fxm = f(x - re)?;
    let fyp = f(x + im)?;
    let fym = f(x - im)?;
    Some(((fxp - fxm) / (2.0 * step), (fyp - fym) / (2.0 * step)))
}

/// 2-norm condition number of the real 2x2 matrix with columns f_x, f_y.
pub fn conditioning(fx: Complex64, fy: Complex64) -> f64 {
    // Singular values of [[a, c], [b, d]] via the standard closed form.
    let (a, b) = (fx.re, fx.im);
    let (c, d) = (fy.re, fy.im);
    let q1 = (a * a + b * b + c * c + d * d) / 2.0;
    let det = a * d - b * c;
    let q2 = (q1 * q1 - det * det).max(0.0).sqrt();
    let smax = (q1 + q2).sqrt();
    let smin = (q1 - q2).max(0.0).sqrt();
    if smin == 0.0 {
        f64::INFINITY
    } else {
        smax / smin
    }
}

/// Solve J·δ = r for the real 2x2 Jacobian with columns (f_x, f_y).
pub fn solve2(fx: Complex64, fy: Complex64, r: Complex64) -> Option<Complex64> {
    let det = fx.re * fy.im - fx.im * fy.re;
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let dx = (r.re * fy.im - r.im * fy.re) / det;
    let dy = (fx.re * r.im - fx.im * r.re) / det;
    Some(Complex64::new(dx, dy))
}

pub struct NewtonOutcome {
    pub x: Complex64,
    pub residual: f64,
    pub iterations: usize,
    pub conditioning: f64,
    pub converged: bool,
}

/// Damped Newton for f(x) = target, f: C -> C as a real 2-variable system.
///
/// Central differences with step `fd_step(|x|)`; steps are halved (up to 12
/// times) whenever the residual fails to decrease. Stops on `tol`, on
/// `max_iter`, on an evaluation failure, or when the Jacobian conditioning
/// exceeds `cond_limit`.
pub fn newton2<F>(
    f: &mut F,
    x0: Complex64,
    target: Complex64,
    tol: f64,
    max_iter: usize,
    cond_limit: f64,
) -> NewtonOutcome
where
    F: FnMut(Complex64) -> Option<Complex64>,
{
    let mut x = x0;
    let mut worst_cond: f64 = 1.0;
    let mut best = NewtonOutcome {
        x,
        residual: f64::INFINITY,
        iterations: 0,
        conditioning: 1.0,
        converged: false,
    };
    let value = match f(x) {
        Some(v) => v,
        None => return best,
    };
    let mut res = value - target;
    for it in 0..max_iter {
        if res.norm() <= tol {
            return NewtonOutcome {
                x,
                residual: res.norm(),
                iterations: it,
                conditioning: worst_cond,
                converged: true,
            };
        }
        if res.norm() < best.residual {
            best = NewtonOutcome {
                x,
                residual: res.norm(),
                iterations: it,
                conditioning: worst_cond,
                converged: false,
            };
        }
        let step = 1e-6 * x.norm().max(1.0);
        let (fx, fy) = match central_jacobian(f, x, step) {
            Some(j) => j,
            None => return best,
        };
        let cond = conditioning(fx, fy);
        worst_cond = worst_cond.max(cond);
        if cond > cond_limit {
            best.conditioning = worst_cond;
            return best;
        }
        let delta = match solve2(fx, fy, -res) {
            Some(d) => d,
            None => return best,
        };
        let mut damp = 1.0;
        let mut advanced = false;
        for _ in 0..12 {
            let cand = x + damp * delta;
            if let Some(v) = f(cand) {
                let cand_res = v - target;
                if cand_res.norm() < res.norm() {
                    x = cand;
                    res = cand_res;
                    advanced = true;
                    break;
                }
            }
            damp *= 0.5;
        }
        if !advanced {
            best.conditioning = worst_cond;
            return best;
        }
    }
    if res.norm() <= tol {
        NewtonOutcome {
            x,
            residual: res.norm(),
            iterations: max_iter,
            conditioning: worst_cond,
            converged: true,
        }
    } else {
        if res.norm() < best.residual {
            best = NewtonOutcome {
                x,
                residual: res.norm(),
                iterations: max_iter,
                conditioning: worst_cond,
                converged: false,
            };
        }
        best.conditioning = worst_cond;
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobian_of_squaring() {
        // f(z) = z^2 has f_x = 2z, f_y = 2iz.
        let mut f = |z: Complex64| Some(z * z);
        let z = Complex64::new(1.3, -0.7);
        let (fx, fy) = central_jacobian(&mut f, z, 1e-6).unwrap();
        assert!((fx - 2.0 * z).norm() < 1e-8);
        assert!((fy - 2.0 * Complex64::i() * z).norm() < 1e-8);
        // Holomorphic squaring away from 0 is perfectly conditioned.
        assert!((conditioning(fx, fy) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn newton_finds_cube_roots() {
        let mut f = |z: Complex64| Some(z * z * z);
        let out = newton2(
            &mut f,
            Complex64::new(2.0, 0.5),
            Complex64::new(8.0, 0.0),
            1e-12,
            64,
            1e8,
        );
        assert!(out.converged);
        assert!((out.x - Complex64::new(2.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn newton_handles_antiholomorphic_targets() {
        // f(z) = z̄ + 0.2 z^2 is not holomorphic; the 2x2 path must still work.
        let mut f = |z: Complex64| Some(z.conj() + 0.2 * z * z);
        let target = Complex64::new(0.3, -0.4);
        let out = newton2(&mut f, Complex64::new(0.1, 0.1), target, 1e-12, 64, 1e8);
        assert!(out.converged);
        let v = out.x.conj() + 0.2 * out.x * out.x;
        assert!((v - target).norm() < 1e-10);
    }

    #[test]
    fn conditioning_of_rank_deficient_matrix_is_infinite() {
        let fx = Complex64::new(1.0, 2.0);
        let fy = Complex64::new(2.0, 4.0);
        assert!(conditioning(fx, fy).is_infinite());
        assert!(solve2(fx, fy, Complex64::new(1.0, 0.0)).is_none());
    }
}
