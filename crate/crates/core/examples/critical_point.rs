//! Critical parameter values per channel for every preset.
//!
//! Run with `cargo run --example critical_point`

use epscan::critical::find_critical;
use epscan::hamiltonian::presets;

fn main() {
    for (name, sys) in presets() {
        match find_critical(&sys, 0.0, 1.3, 1301) {
            Ok(report) => {
                println!(
                    "{name}: a_cr = {:.6} (channel {})",
                    report.a_cr,
                    report.primary_channel + 1
                );
                for (c, ch) in report.channels.iter().enumerate() {
                    let b = ch.bifurcation.expect("bifurcating channel");
                    println!(
                        "  ch{}: width gap {:.4} at {:.6}, rigidity {:.4} at {:.6}, min |D| {:.2e} at {:.6}, window {:?}",
                        c + 1,
                        b.max_width_gap,
                        b.a_cr_width,
                        b.max_min_rigidity,
                        b.a_cr_rigidity,
                        ch.min_discriminant,
                        ch.a_ep_proximity,
                        b.window
                    );
                }
            }
            Err(e) => println!("{name}: {e}"),
        }
    }
}
