//! Eigenvalue trajectories of fig1-left channel 1 and the width bifurcation
//! around the level crossing.
//!
//! Run with `cargo run --example sweep`

use epscan::eig::DEFAULT_EP_TOL;
use epscan::hamiltonian::fig1_left;
use epscan::observables::{linspace, run_sweep};

fn main() {
    let grid = linspace(0.0, 1.3, 1301);
    let records = run_sweep(&fig1_left(), &grid, DEFAULT_EP_TOL).expect("valid grid");
    println!(
        "{:>6} {:>9} {:>9} {:>9} {:>9} {:>7} {:>7}",
        "a", "E1", "E2", "Γ1", "Γ2", "r1", "r2"
    );
    for rec in records.iter().step_by(65) {
        let ch = &rec.channels[0];
        let (s1, o1) = ch.branch(1);
        let (s2, o2) = ch.branch(2);
        println!(
            "{:>6.3} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>7.4} {:>7.4}",
            rec.a,
            s1.energy(),
            s2.energy(),
            s1.width(),
            s2.width(),
            o1.rigidity,
            o2.rigidity
        );
    }
    let widest = records
        .iter()
        .max_by(|p, q| p.channels[0].width_gap().total_cmp(&q.channels[0].width_gap()))
        .unwrap();
    println!(
        "largest |Γ1 − Γ2| = {:.4} at a = {:.3}",
        widest.channels[0].width_gap(),
        widest.a
    );
}
