//! Dynamical planes for three parameters with different basin structure.
//!
//! a = 4: two superattracting fixed points away from the circle — green and
//! yellow basins on either side, red escape, black zero basin.
//! a = 2.5: one attracting cycle on the circle itself.
//! a = −0.87 + 2.05333i: both free critical orbits escape; no green at all.

use blaschke_atlas::render::{render_dyn_plane, write_image};
use blaschke_atlas::{OrbitSpec, PlaneSpec};
use num_complex::Complex64;

fn main() {
    std::fs::create_dir_all("out").unwrap();
    let n = 300;
    for (tag, a) in [
        ("a4", Complex64::new(4.0, 0.0)),
        ("a2.5", Complex64::new(2.5, 0.0)),
        ("escape", Complex64::new(-0.87, 2.05333)),
    ] {
        let window = PlaneSpec::new(
            Complex64::new(0.0, 0.0),
            5.0,
            5.0,
            n,
            n,
            OrbitSpec::for_grid(),
        )
        .unwrap();
        let pixels = render_dyn_plane(a, &window).unwrap();
        let path = format!("out/dyn_{tag}.png");
        write_image(&path, n, n, &pixels).unwrap();
        println!("wrote {path}");
    }
}
