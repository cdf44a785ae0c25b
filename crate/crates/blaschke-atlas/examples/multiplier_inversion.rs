//! Invert the multiplier map on the disjoint component around a = 5.25:
//! walk eight targets on the circle |λ| = 1/2, then land on the center.

use blaschke_atlas::{find_superattracting, multiplier_at, solve_multiplier, OrbitSpec};
use num_complex::Complex64;
use std::f64::consts::TAU;

fn main() {
    let spec = OrbitSpec::default();
    let seed = Complex64::new(5.25, 0.0);
    println!("Λ(5.25) = {}", multiplier_at(seed, &spec).unwrap());

    for k in 0..8 {
        let target = Complex64::from_polar(0.5, TAU * k as f64 / 8.0);
        let report = solve_multiplier(seed, target, &spec).unwrap();
        let back = multiplier_at(report.a_star, &spec).unwrap();
        println!(
            "λ = 0.5·e^(2πi·{k}/8): a* = {:.12}{:+.12}i  residual {:.2e}  re-measured off by {:.2e}  ({} newton steps)",
            report.a_star.re,
            report.a_star.im,
            report.residual,
            (back - target).norm(),
            report.steps
        );
    }

    let center = find_superattracting(seed, 2, &spec).unwrap();
    println!(
        "center: a* = {:.15}  |Λ| = {:.2e}  conditioning {:.2}",
        center.a_star.re,
        center.achieved.norm(),
        center.jacobian_conditioning
    );
}
