//! Transmission T(E) without mixing and at the critical point, with the
//! positions of its local maxima.
//!
//! Run with `cargo run --example transmission_spectrum`

use epscan::critical::find_critical;
use epscan::hamiltonian::{fig1_left, fig1_right, fig2};
use epscan::observables::linspace;
use epscan::scattering::{local_maxima, poles_at, transmission_profile};

fn main() {
    let e_grid = linspace(-1.0, 2.0, 3001);
    let cases = [
        ("fig2", fig2(), 0.0),
        (
            "fig1-left",
            fig1_left(),
            find_critical(&fig1_left(), 0.0, 1.3, 1301).unwrap().a_cr,
        ),
        (
            "fig1-right",
            fig1_right(),
            find_critical(&fig1_right(), 0.0, 1.3, 1301).unwrap().a_cr,
        ),
    ];
    for (name, sys, a) in cases {
        let t = transmission_profile(&sys, a, &e_grid).expect("non-degenerate widths");
        println!("{name} at a = {a:.4}");
        for p in poles_at(&sys, a).unwrap() {
            println!("  pole E = {:>8.4}  Γ = {:.4}", p.energy, p.width);
        }
        for (e, v) in local_maxima(&e_grid, &t) {
            println!("  maximum T = {v:.4} at E = {e:.3}");
        }
    }
}
