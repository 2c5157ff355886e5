//! Golden-section search for the maximum of a unimodal function on a bracket.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Maximize `f` on `[lo, hi]` until the bracket is narrower than `tol`.
///
/// The returned point is the best of the final interior probes and the
/// bracket ends, so an extremum sitting on the boundary is found as well.
pub fn maximize<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Extremum {
    assert!(lo <= hi, "golden-section bracket reversed: [{lo}, {hi}]");
    assert!(tol > 0.0);
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iterations = 0;
    while b - a > tol && iterations < 200 {
        iterations += 1;
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    for x in [lo, hi] {
        let v = f(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    Extremum {
        x: best.0,
        value: best.1,
        iterations,
    }
}

pub fn minimize<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Extremum {
    let e = maximize(|x| -f(x), lo, hi, tol);
    Extremum { value: -e.value, ..e }
}
