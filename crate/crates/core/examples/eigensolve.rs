//! Closed-form eigenpairs of one channel block, at a generic point and at an
//! exceptional point.
//!
//! Run with `cargo run --example eigensolve`

use epscan::eig::{bilinear, eigensolve, Complex2x2Symmetric, DEFAULT_EP_TOL};
use epscan::observables::phase_rigidity;
use epscan::C64;

fn show(label: &str, m: &Complex2x2Symmetric) {
    println!("{label}: D = {:.6}", m.discriminant().value);
    for s in eigensolve(m, DEFAULT_EP_TOL) {
        println!(
            "  ℰ = {:.6}  Φ = ({:.4}, {:.4})  ΦᵀΦ = {:.3}  r = {:.4}  EP = {}",
            s.value,
            s.vector[0],
            s.vector[1],
            bilinear(&s.vector, &s.vector),
            phase_rigidity(&s),
            s.is_ep_member
        );
    }
}

fn main() {
    let i = |x: f64| C64::new(0.0, x);
    // fig1-left channel 1 at a = 0.3
    let generic = Complex2x2Symmetric::new(C64::new(0.85, -0.4), C64::new(0.3, -0.35), i(0.5));
    show("generic", &generic);
    // d = ±1/2 with ω = i/2 makes the discriminant vanish
    let ep = Complex2x2Symmetric::new(C64::new(0.5, 0.0), C64::new(-0.5, 0.0), i(0.5));
    show("exceptional point", &ep);
}
