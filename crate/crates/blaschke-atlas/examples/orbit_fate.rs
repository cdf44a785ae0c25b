//! Follow individual seeds under B_a and print where they end up.

use blaschke_atlas::family::ExtComplex;
use blaschke_atlas::{classify_fate, BlaschkeParam, FateTag, OrbitSpec};
use num_complex::Complex64;

fn main() {
    let p = BlaschkeParam::new(Complex64::new(4.0, 0.0));
    let spec = OrbitSpec::default();

    let seeds = [
        Complex64::new(3.0, 0.0),    // near the outer superattracting point
        Complex64::new(0.3, 0.1),    // near the inner one
        Complex64::new(0.26, 0.0),   // next to the pole 1/ā = 0.25
        Complex64::new(0.05, 0.0),   // deep inside the zero basin
        Complex64::new(12.0, 0.0),   // outside the escape radius already
        Complex64::new(0.0, 1.0),    // exactly on the invariant circle
    ];

    for z0 in seeds {
        let fate = classify_fate(&p, ExtComplex::Finite(z0), &spec);
        print!("z0 = {:>10} ", format!("{:.3}{:+.3}i", z0.re, z0.im));
        match &fate.tag {
            FateTag::Cycle(c) => println!(
                "-> period-{} cycle at {:.6}{:+.6}i (|λ| = {:.3e}, on circle: {}) after {} steps",
                c.period,
                c.points[0].re,
                c.points[0].im,
                c.multiplier.norm(),
                c.on_circle,
                fate.iterations_used,
            ),
            FateTag::EscapeInf => println!(
                "-> ∞ after {} steps ({} disk crossings)",
                fate.iterations_used, fate.entered_disk
            ),
            FateTag::EscapeZero => println!("-> 0 after {} steps", fate.iterations_used),
            FateTag::Undecided => println!("-> undecided after {} steps", fate.iterations_used),
        }
    }

    // The two critical orbits land on different fixed points: the golden pair.
    let cd = blaschke_atlas::critical_points(&p).unwrap();
    for (name, c) in [("c_plus", cd.c_plus), ("c_minus", cd.c_minus)] {
        let fate = classify_fate(&p, ExtComplex::Finite(c), &spec);
        if let FateTag::Cycle(cyc) = &fate.tag {
            println!("{name} = {:.6} -> fixed point {:.15}", c.re, cyc.points[0].re);
        }
    }
}
