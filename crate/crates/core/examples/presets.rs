//! The preset catalog and the matrices each preset produces at a = 0.
//!
//! Run with `cargo run --example presets`

use epscan::hamiltonian::{build_system, presets};

fn main() {
    for (name, sys) in presets() {
        println!("{name}");
        for (c, m) in build_system(&sys, 0.0).iter().enumerate() {
            println!("  channel {}: d11 = {}  d22 = {}  ω = {}", c + 1, m.d11, m.d22, m.off);
        }
    }
}
