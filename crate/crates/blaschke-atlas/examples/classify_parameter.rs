//! Classify a tour of parameters, one per taxonomy class.

use blaschke_atlas::{classify_parameter, OrbitSpec};
use num_complex::Complex64;

fn main() {
    let spec = OrbitSpec::default();
    let tour = [
        ("inside the disk", Complex64::new(0.5, 0.0)),
        ("tongue spine", Complex64::new(2.5, 0.0)),
        ("bitransitive", Complex64::new(1.5, 0.0)),
        ("disjoint, small", Complex64::new(1.07398, 0.5579)),
        ("no attracting cycle", Complex64::new(0.0, 1.5)),
        ("disjoint pair", Complex64::new(5.25, 0.0)),
        ("immediate escape", Complex64::new(-0.87, 2.05333)),
        ("swapping bitransitive", Complex64::new(-3.22271, 5.58189)),
        ("swapping disjoint", Complex64::new(-3.22278, 5.58202)),
    ];

    println!(
        "{:<22} {:>20} {:<22} {:>6} {:>24} connectivity",
        "description", "a", "label", "period", "multiplier"
    );
    for (desc, a) in tour {
        let r = classify_parameter(a, &spec);
        let lam = r.multiplier();
        println!(
            "{:<22} {:>20} {:<22} {:>6} {:>24} {}",
            desc,
            format!("{:.5}{:+.5}i", a.re, a.im),
            r.label.as_str(),
            r.period(),
            format!("{:.6}{:+.6}i", lam.re, lam.im),
            r.connectivity.as_str(),
        );
    }

    // The disjoint pair carries two cycles whose multipliers are conjugate.
    let r = classify_parameter(Complex64::new(5.25, 0.0), &spec);
    let plus = r.cycle_plus.unwrap();
    let minus = r.cycle_minus.unwrap();
    println!("\na = 5.25 cycles:");
    println!("  c_plus  -> period {} at {:?}", plus.period, plus.points);
    println!("  c_minus -> period {} at {:?}", minus.period, minus.points);
    println!(
        "  conjugate multipliers: {:e}",
        (plus.multiplier - minus.multiplier.conj()).norm()
    );
}
