//! Restricted to the exterior disjoint region, B_a is conjugate on its
//! non-circle attractors to a cubic M_b(z) = bz²(z−1): find the b whose free
//! critical cycle has the same multiplier as the a = 5.25 pair.

use blaschke_atlas::polys::scan_cubic_seed;
use blaschke_atlas::{match_cubic_multiplier, multiplier_at, OrbitSpec};
use num_complex::Complex64;

fn main() {
    let spec = OrbitSpec::default();
    let a = Complex64::new(5.25, 0.0);
    let b_seed = Complex64::new(-5.5, 0.0);
    let (b_star, residual) = match_cubic_multiplier(a, b_seed, &spec).unwrap();
    println!(
        "a = 5.25 (λ = {})  ->  b* = {:.12}{:+.12}i  residual {:.2e}",
        multiplier_at(a, &spec).unwrap(),
        b_star.re,
        b_star.im,
        residual
    );

    // The period-1 cubic component has its center at b = −4.5, where the free
    // critical point 2/3 is itself fixed: M_b(2/3) = 2/3 forces b = −4.5.
    if let Some((b, lam)) = scan_cubic_seed(1, (-5.0, -4.0), (-0.2, 0.2), 64, &spec) {
        println!("period-1 scan seed: b = {:.3}, λ = {:.4}", b.re, lam.norm());
    }
}
