//! T(E, a) over the default window for fig1-left, written as an SVG heatmap
//! with the critical point marked.
//!
//! Run with `cargo run --release --example contour_heatmap -- [out.svg]`

use epscan::critical::find_critical;
use epscan::hamiltonian::fig1_left;
use epscan::observables::linspace;
use epscan::output::render_svg_heatmap;
use epscan::scattering::transmission_grid;

fn main() -> std::io::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "contour.svg".into());
    let sys = fig1_left();
    let a_cr = find_critical(&sys, 0.0, 1.3, 1301).unwrap().a_cr;
    // a coarser grid keeps the file small; the cells are still finer than the features
    let grid = transmission_grid(&sys, &linspace(-1.0, 2.0, 301), &linspace(0.0, 1.3, 131))
        .unwrap()
        .with_marker(a_cr);
    std::fs::write(&path, render_svg_heatmap(&grid))?;
    println!(
        "wrote {path} ({} × {} cells, a_cr = {a_cr:.4})",
        grid.a_grid.len(),
        grid.e_grid.len()
    );
    Ok(())
}
