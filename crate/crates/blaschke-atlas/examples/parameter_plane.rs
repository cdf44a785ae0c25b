//! Render the parameter plane over [−8,8]² and export the records.
//!
//! Writes out/param_plane.ppm and out/param_plane.csv. Red: both critical
//! orbits escape. Black: |a| ≤ 1, where the unit circle is the Julia set.
//! Green: attracting cycle on the circle (tongues). Pink: attracting cycle
//! off the circle. Blue: undecided at this iteration budget.

use blaschke_atlas::atlas::param_plane_grid;
use blaschke_atlas::export::{param_csv, write_text};
use blaschke_atlas::render::{render_param_plane, write_ppm};
use blaschke_atlas::{Label, OrbitSpec, PlaneSpec};
use num_complex::Complex64;

fn main() {
    let n = 240;
    let window = PlaneSpec::new(
        Complex64::new(0.0, 0.0),
        16.0,
        16.0,
        n,
        n,
        OrbitSpec::for_grid(),
    )
    .unwrap();

    let t0 = std::time::Instant::now();
    let records = param_plane_grid(&window);
    eprintln!("classified {} pixels in {:.1?}", records.len(), t0.elapsed());

    let mut counts = std::collections::BTreeMap::new();
    for r in &records {
        *counts.entry(r.label).or_insert(0usize) += 1;
    }
    for (label, count) in &counts {
        println!("{:<24} {}", label.as_str(), count);
    }
    let swapping = records.iter().filter(|r| r.swapping).count();
    println!("swapping flag set on {swapping} pixels");
    assert!(counts.contains_key(&Label::TongueAdjacent));

    std::fs::create_dir_all("out").unwrap();
    write_ppm("out/param_plane.ppm", n, n, &render_param_plane(&records)).unwrap();
    write_text("out/param_plane.csv", &param_csv(&records)).unwrap();
    println!("wrote out/param_plane.ppm, out/param_plane.csv");
}
