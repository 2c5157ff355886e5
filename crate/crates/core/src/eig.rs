//! Closed-form eigendecomposition of 2×2 complex-symmetric matrices.
//!
//! Eigenvectors of a complex-symmetric matrix are biorthogonal: the left
//! eigenvector of each eigenvalue is the complex conjugate of the right one.
//! Right eigenvectors are therefore normalized with the bilinear product
//! `Φᵀ Φ = 1` (c-normalization) instead of the Hermitian norm. At an
//! exceptional point the two eigenvalues coalesce, the eigenvector becomes
//! self-orthogonal (`Φᵀ Φ = 0`) and c-normalization is impossible; this is
//! signalled through flags rather than errors.

use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

/// Default relative tolerance below which the discriminant counts as zero.
pub const DEFAULT_EP_TOL: f64 = 1e-10;

/// Relative threshold on `|vᵀv| / v†v` below which a vector is self-orthogonal.
pub const SELF_ORTHOGONAL_TOL: f64 = 1e-14;

/// Symmetric 2×2 complex matrix `[[d11, off], [off, d22]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex2x2Symmetric {
    pub d11: C64,
    pub d22: C64,
    pub off: C64,
}

impl Complex2x2Symmetric {
    pub fn new(d11: C64, d22: C64, off: C64) -> Self {
        Self { d11, d22, off }
    }

    pub fn diagonal(d11: C64, d22: C64) -> Self {
        Self::new(d11, d22, C64::new(0.0, 0.0))
    }

    pub fn trace(&self) -> C64 {
        self.d11 + self.d22
    }

    pub fn determinant(&self) -> C64 {
        self.d11 * self.d22 - self.off * self.off
    }

    pub fn max_modulus(&self) -> f64 {
        self.d11.norm().max(self.d22.norm()).max(self.off.norm())
    }

    /// Scale used by the relative exceptional-point test.
    pub fn ep_scale(&self) -> f64 {
        1f64.max(self.d11.norm_sqr())
            .max(self.d22.norm_sqr())
            .max(self.off.norm_sqr())
    }

    pub fn discriminant(&self) -> Discriminant {
        let half = (self.d11 - self.d22) * 0.5;
        Discriminant::new(half * half + self.off * self.off)
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        [self.d11 * v[0] + self.off * v[1], self.off * v[0] + self.d22 * v[1]]
    }

    pub fn to_array(&self) -> [[C64; 2]; 2] {
        [[self.d11, self.off], [self.off, self.d22]]
    }
}

/// `D = ((d11 − d22)/2)² + off²`; the eigenvalues are `(d11 + d22)/2 ± √D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discriminant {
    pub value: C64,
    pub modulus: f64,
}

impl Discriminant {
    pub fn new(value: C64) -> Self {
        Self {
            value,
            modulus: value.norm(),
        }
    }
}

/// One eigenpair `ℰ = E + (i/2)Γ`, `Φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSolution {
    pub value: C64,
    pub vector: [C64; 2],
    /// False exactly when `ΦᵀΦ` vanished and the vector could only be
    /// normalized in the Euclidean sense.
    pub c_norm_ok: bool,
    pub is_ep_member: bool,
}

impl EigenSolution {
    /// Resonance energy `E = Re ℰ`.
    pub fn energy(&self) -> f64 {
        self.value.re
    }

    /// Width `Γ = 2 Im ℰ` (negative for decaying states).
    pub fn width(&self) -> f64 {
        2.0 * self.value.im
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CNormError {
    #[error("cannot normalize the zero vector")]
    ZeroVector,
    #[error("vector is self-orthogonal (vᵀv = 0); it belongs to an exceptional point")]
    SelfOrthogonal,
}

/// Bilinear product `uᵀ v` (no conjugation).
pub fn bilinear(u: &[C64; 2], v: &[C64; 2]) -> C64 {
    u[0] * v[0] + u[1] * v[1]
}

/// Hermitian product `u† v`.
pub fn hermitian(u: &[C64; 2], v: &[C64; 2]) -> C64 {
    u[0].conj() * v[0] + u[1].conj() * v[1]
}

fn euclid_norm_sqr(v: &[C64; 2]) -> f64 {
    v[0].norm_sqr() + v[1].norm_sqr()
}

/// Flip the overall sign so the largest component has argument in (−π/2, π/2].
fn fix_sign(mut w: [C64; 2]) -> [C64; 2] {
    let lead = if w[0].norm() >= w[1].norm() { w[0] } else { w[1] };
    let arg = lead.arg();
    let half_pi = std::f64::consts::FRAC_PI_2;
    if !(arg > -half_pi && arg <= half_pi) {
        w[0] = -w[0];
        w[1] = -w[1];
    }
    w
}

/// Scale `v` so that `vᵀ v = 1`.
pub fn c_normalize(v: [C64; 2]) -> Result<[C64; 2], CNormError> {
    let herm = euclid_norm_sqr(&v);
    if herm == 0.0 || !herm.is_finite() {
        return Err(CNormError::ZeroVector);
    }
    let bil = bilinear(&v, &v);
    if bil.norm() <= SELF_ORTHOGONAL_TOL * herm {
        return Err(CNormError::SelfOrthogonal);
    }
    let s = bil.sqrt();
    Ok(fix_sign([v[0] / s, v[1] / s]))
}

fn euclid_normalize(v: [C64; 2]) -> [C64; 2] {
    let n = euclid_norm_sqr(&v).sqrt();
    fix_sign([v[0] / n, v[1] / n])
}

/// Right eigenvector for `lambda`, choosing the better conditioned of the two
/// rows of `m − λ I`.
fn raw_eigenvector(m: &Complex2x2Symmetric, lambda: C64) -> [C64; 2] {
    let from_row1 = [m.off, lambda - m.d11];
    let from_row2 = [lambda - m.d22, m.off];
    if euclid_norm_sqr(&from_row1) >= euclid_norm_sqr(&from_row2) {
        from_row1
    } else {
        from_row2
    }
}

fn order_key(a: &C64, b: &C64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Solve `m Φ = ℰ Φ` in closed form.
///
/// Solutions are sorted by ascending real part (ties by imaginary part).
/// When `|D| ≤ ep_tol · max(1, |d11|², |d22|², |off|²)` the matrix sits at an
/// exceptional point: both solutions share the mean eigenvalue, carry
/// `is_ep_member = true`, and satisfy `Φ₁ = i Φ₂`. A matrix that is a
/// multiple of the identity is degenerate without being defective and keeps
/// the unit basis vectors.
pub fn eigensolve(m: &Complex2x2Symmetric, ep_tol: f64) -> [EigenSolution; 2] {
    let mean = (m.d11 + m.d22) * 0.5;
    let half = (m.d11 - m.d22) * 0.5;
    let disc = m.discriminant();
    let tol = ep_tol * m.ep_scale();

    if disc.modulus <= tol {
        if half.norm_sqr() + m.off.norm_sqr() <= tol {
            // scalar matrix: every vector is an eigenvector
            let e1 = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
            let e2 = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
            return [e1, e2].map(|vector| EigenSolution {
                value: mean,
                vector,
                c_norm_ok: true,
                is_ep_member: false,
            });
        }
        let v1 = euclid_normalize(raw_eigenvector(m, mean));
        let i = C64::new(0.0, 1.0);
        let v2 = [-i * v1[0], -i * v1[1]];
        return [v1, v2].map(|vector| EigenSolution {
            value: mean,
            vector,
            c_norm_ok: false,
            is_ep_member: true,
        });
    }

    if m.off == C64::new(0.0, 0.0) {
        // already diagonal: return the entries untouched
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let mut pairs = [(m.d11, [one, zero]), (m.d22, [zero, one])];
        pairs.sort_by(|p, q| order_key(&p.0, &q.0));
        return pairs.map(|(value, vector)| EigenSolution {
            value,
            vector,
            c_norm_ok: true,
            is_ep_member: false,
        });
    }

    let root = disc.value.sqrt();
    let mut values = [mean + root, mean - root];
    values.sort_by(order_key);
    values.map(|value| {
        let raw = raw_eigenvector(m, value);
        match c_normalize(raw) {
            Ok(vector) => EigenSolution {
                value,
                vector,
                c_norm_ok: true,
                is_ep_member: false,
            },
            Err(_) => EigenSolution {
                value,
                vector: euclid_normalize(raw),
                c_norm_ok: false,
                is_ep_member: false,
            },
        }
    })
}

/// Eigenvalues as roots of `λ² − tr(m) λ + det(m)`, sorted like [`eigensolve`].
///
/// Shares nothing with the discriminant route and serves as its cross-check.
pub fn oracle_eigenvalues(m: &Complex2x2Symmetric) -> [C64; 2] {
    let t = m.d11 + m.d22;
    let d = m.d11 * m.d22 - m.off * m.off;
    let disc = t * t - d * 4.0;
    let sq = disc.sqrt();
    // avoid cancellation: compute the larger root first, then use Vieta
    let big = if (t.conj() * sq).re >= 0.0 {
        (t + sq) * 0.5
    } else {
        (t - sq) * 0.5
    };
    let small = if big.norm() == 0.0 { C64::new(0.0, 0.0) } else { d / big };
    let mut roots = [big, small];
    roots.sort_by(order_key);
    roots
}
