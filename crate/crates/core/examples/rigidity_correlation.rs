//! Mean phase rigidity against mean transmission across the bifurcation
//! window of fig1-left.
//!
//! Run with `cargo run --release --example rigidity_correlation`

use epscan::critical::find_critical;
use epscan::eig::DEFAULT_EP_TOL;
use epscan::hamiltonian::fig1_left;
use epscan::observables::{linspace, run_sweep};
use epscan::scattering::{rigidity_transmission_correlation, transmission_grid};

fn main() {
    let sys = fig1_left();
    let (lo, hi) = find_critical(&sys, 0.0, 1.3, 1301).unwrap().window().expect("window");
    let a_grid: Vec<f64> = linspace(0.0, 1.3, 1301)
        .into_iter()
        .filter(|a| (lo..=hi).contains(a))
        .collect();
    let e_grid = linspace(-1.0, 2.0, 3001);

    let sweep = run_sweep(&sys, &a_grid, DEFAULT_EP_TOL).unwrap();
    let grid = transmission_grid(&sys, &e_grid, &a_grid).unwrap();
    let t_mean = grid.energy_averages();
    for (rec, t) in sweep.iter().zip(&t_mean).step_by(97) {
        println!(
            "a = {:.3}  mean r = {:.4}  mean T = {:.4}",
            rec.a,
            rec.mean_rigidity(),
            t
        );
    }
    let rho = rigidity_transmission_correlation(&sweep, &grid).unwrap();
    println!("window [{lo:.4}, {hi:.4}], {} points: pearson = {rho:.6}", a_grid.len());
}
