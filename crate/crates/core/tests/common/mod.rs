//! Oracles shared by the integration tests. Nothing here calls into the
//! solver under test.

#![allow(dead_code)]

use epscan::C64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Uniform sample from the complex unit square.
pub fn unit_square(r: &mut StdRng) -> C64 {
    c(r.gen::<f64>(), r.gen::<f64>())
}

/// Characteristic polynomial `det(λI − M)` of a dense matrix by the
/// Faddeev–LeVerrier recursion. Coefficients are returned highest degree
/// first, so `p[0] = 1`.
pub fn char_poly<const N: usize>(m: &[[C64; N]; N]) -> Vec<C64> {
    let zero = c(0.0, 0.0);
    let mut coeffs = vec![c(1.0, 0.0)];
    let mut mk = [[zero; N]; N];
    let mut prev_c = c(1.0, 0.0);
    for k in 1..=N {
        // M_k = A·M_{k−1} + c_{k−1} I, with M_0 = 0
        let mut next = [[zero; N]; N];
        for i in 0..N {
            for j in 0..N {
                let mut s = zero;
                for l in 0..N {
                    s += m[i][l] * mk[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += prev_c;
        }
        mk = next;
        let mut tr = zero;
        for i in 0..N {
            for l in 0..N {
                tr += m[i][l] * mk[l][i];
            }
        }
        prev_c = -tr / k as f64;
        coeffs.push(prev_c);
    }
    coeffs
}

pub fn poly_eval(p: &[C64], x: C64) -> C64 {
    p.iter().fold(c(0.0, 0.0), |acc, &k| acc * x + k)
}

fn poly_derivative(p: &[C64]) -> Vec<C64> {
    let n = p.len() - 1;
    p[..n].iter().enumerate().map(|(i, &k)| k * (n - i) as f64).collect()
}

/// Roots of a monic polynomial by Durand–Kerner iteration followed by a
/// few Newton steps per root.
pub fn poly_roots(p: &[C64]) -> Vec<C64> {
    let n = p.len() - 1;
    let seed = c(0.4, 0.9);
    let mut z: Vec<C64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = c(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = poly_eval(p, z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    let dp = poly_derivative(p);
    for r in z.iter_mut() {
        for _ in 0..3 {
            let d = poly_eval(&dp, *r);
            if d.norm() == 0.0 {
                break;
            }
            let step = poly_eval(p, *r) / d;
            if !step.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    z
}

/// Largest distance under the best one-to-one matching of two root sets.
pub fn set_distance(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut idx: Vec<usize> = (0..b.len()).collect();
    let mut best = f64::INFINITY;
    permute(&mut idx, 0, &mut |perm| {
        let worst = a.iter().zip(perm).map(|(x, &j)| (x - b[j]).norm()).fold(0.0, f64::max);
        best = best.min(worst);
    });
    best
}

fn permute(idx: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == idx.len() {
        visit(idx);
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute(idx, k + 1, visit);
        idx.swap(k, i);
    }
}
