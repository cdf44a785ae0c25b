//! Zoom into the two small-copy windows where swapping parameters live:
//! a Tricorn-like copy near −3.2227 + 5.582i and a Mandelbrot-like copy
//! near 2.0803 + 1.9339i.

use blaschke_atlas::atlas::param_plane_grid;
use blaschke_atlas::render::{render_param_plane, write_ppm};
use blaschke_atlas::{Label, OrbitSpec, PlaneSpec};

fn main() {
    std::fs::create_dir_all("out").unwrap();
    let windows = [
        ("tricorn_copy", -3.22295, -3.22249, 5.58172, 5.58218),
        ("mandelbrot_copy", 2.080306, 2.080311, 1.9339165, 1.9339215),
    ];
    for (tag, re_lo, re_hi, im_lo, im_hi) in windows {
        let n = 100;
        let window =
            PlaneSpec::from_bounds(re_lo, re_hi, im_lo, im_hi, n, n, OrbitSpec::for_grid())
                .unwrap();
        let t0 = std::time::Instant::now();
        let records = param_plane_grid(&window);
        let swap_bi = records
            .iter()
            .filter(|r| r.label == Label::SwappingBitransitive)
            .count();
        let swap_dis = records
            .iter()
            .filter(|r| r.label == Label::SwappingDisjoint)
            .count();
        println!(
            "{tag}: {} px in {:.1?} — swapping-bitransitive {}, swapping-disjoint {}",
            records.len(),
            t0.elapsed(),
            swap_bi,
            swap_dis
        );
        write_ppm(
            format!("out/{tag}.ppm"),
            n,
            n,
            &render_param_plane(&records),
        )
        .unwrap();
    }
}
