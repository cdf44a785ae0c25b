//! Parameter planes of the comparison families: the Tricorn (z̄² + c), the
//! Mandelbrot set (z² + c), and the cubic slice M_b(z) = bz²(z−1).

use blaschke_atlas::polys::{poly_plane_grid, PolyFamily};
use blaschke_atlas::render::{render_poly_plane, write_image};
use blaschke_atlas::{Label, OrbitSpec, PlaneSpec};
use num_complex::Complex64;

fn main() {
    std::fs::create_dir_all("out").unwrap();
    let jobs = [
        (PolyFamily::AntiquadraticP, Complex64::new(-0.3, 0.0), 4.0),
        (PolyFamily::Quadratic, Complex64::new(-0.5, 0.0), 3.2),
        (PolyFamily::CubicM, Complex64::new(-4.5, 0.0), 4.0),
    ];
    let n = 220;
    for (family, center, width) in jobs {
        let window =
            PlaneSpec::new(center, width, width, n, n, OrbitSpec::for_grid()).unwrap();
        let records = poly_plane_grid(family, &window);
        let cycling = records
            .iter()
            .filter(|r| r.label == Label::Disjoint)
            .count();
        let escaping = records
            .iter()
            .filter(|r| r.label == Label::EscapingImmediate)
            .count();
        println!(
            "{:<22} {} px: {} with attracting cycles, {} escaping",
            family.as_str(),
            records.len(),
            cycling,
            escaping
        );
        let path = format!("out/poly_{}.png", family.as_str());
        write_image(&path, n, n, &render_poly_plane(&records)).unwrap();
        println!("wrote {path}");
    }
}
