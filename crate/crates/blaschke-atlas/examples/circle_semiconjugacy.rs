//! On |a| ≥ 2 the circle restriction is a degree-2 cover: its lift F
//! satisfies H(F(x)) = 2H(x) for a monotone H, computed here as the limit
//! H_n = F^n / 2^n.

use blaschke_atlas::circle::tongue_membership;
use blaschke_atlas::{build_lift, semiconjugacy, BlaschkeParam, OrbitSpec};
use num_complex::Complex64;

fn main() {
    for a in [
        Complex64::new(4.0, 0.0),
        Complex64::new(5.25, 0.0),
        Complex64::new(2.5, 0.0),
        Complex64::new(-3.0, 4.0),
    ] {
        let p = BlaschkeParam::new(a);
        let lift = build_lift(&p, 1024).unwrap();
        let h = semiconjugacy(&p, &lift, 40).unwrap();
        println!(
            "a = {:6.2}{:+.2}i  winding {}  F(0) = {:.6}  defect {:.3e}",
            a.re,
            a.im,
            lift.winding(),
            lift.values()[0],
            h.defect
        );
    }

    // Inside a tongue H develops a plateau: the attracting circle cycle
    // absorbs an interval of angles.
    let p = BlaschkeParam::new(Complex64::new(2.5, 0.0));
    let lift = build_lift(&p, 1024).unwrap();
    let h = semiconjugacy(&p, &lift, 40).unwrap();
    let mut longest = 0usize;
    let mut run = 0usize;
    for w in h.values.windows(2) {
        if (w[1] - w[0]).abs() < 1e-9 {
            run += 1;
            longest = longest.max(run);
        } else {
            run = 0;
        }
    }
    println!("a = 2.5 longest plateau: {longest} of {} samples", h.values.len());

    let spec = OrbitSpec::default();
    for a in [Complex64::new(2.5, 0.0), Complex64::new(4.0, 0.0)] {
        let v = tongue_membership(&BlaschkeParam::new(a), &spec).unwrap();
        println!("tongue_membership({}) = {}", a.re, v.in_tongue);
    }
}
