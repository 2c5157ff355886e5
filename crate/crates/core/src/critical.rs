//! Critical parameter values of a sweep.
//!
//! Per channel three objectives are located: the maximum of the width gap
//! `|Γ₁(a) − Γ₂(a)|`, the maximum of the smaller phase rigidity inside the
//! bifurcation window, and the minimum of the discriminant modulus `|D(a)|`
//! (distance to an exceptional point). Each is found by a coarse scan
//! followed by golden-section refinement.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::eig::{eigensolve, Discriminant, DEFAULT_EP_TOL};
use crate::golden;
use crate::hamiltonian::{build_block, ChannelBlock, TwoChannelSystem};
use crate::observables::{linspace, phase_rigidity};

/// Refinement stops once the bracket is this narrow in `a`.
pub const REFINE_TOL: f64 = 1e-6;
pub const MIN_SCAN_POINTS: usize = 50;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CriticalError {
    #[error("invalid scan interval [{lo}, {hi}]")]
    InvalidRange { lo: f64, hi: f64 },
    #[error("scan needs at least {MIN_SCAN_POINTS} points, got {0}")]
    TooFewScanPoints(usize),
    #[error("no width bifurcation: the width gap is constant in every channel")]
    NoBifurcation,
    #[error("discriminant scan needs a non-empty grid")]
    EmptyGrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bifurcation {
    /// argmax of `|Γ₁ − Γ₂|`.
    pub a_cr_width: f64,
    pub max_width_gap: f64,
    /// argmax of `min(r₁, r₂)` inside the window.
    pub a_cr_rigidity: f64,
    pub max_min_rigidity: f64,
    /// Interval around `a_cr_width` where the width gap exceeds twice its
    /// larger boundary value; `None` if the peak never gets there.
    pub window: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelCritical {
    pub bifurcation: Option<Bifurcation>,
    /// argmin of `|D(a)|`.
    pub a_ep_proximity: f64,
    pub min_discriminant: f64,
    pub ep_flag: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalReport {
    pub a_lo: f64,
    pub a_hi: f64,
    pub n_scan: usize,
    pub channels: [ChannelCritical; 2],
    /// Index (0 or 1) of the bifurcating channel with the largest peak width gap.
    pub primary_channel: usize,
    /// `a_cr_width` of the primary channel.
    pub a_cr: f64,
}

impl CriticalReport {
    /// Bifurcation window of the primary channel.
    pub fn window(&self) -> Option<(f64, f64)> {
        self.channels[self.primary_channel].bifurcation.and_then(|b| b.window)
    }
}

fn width_gap(block: &ChannelBlock, a: f64, ep_tol: f64) -> f64 {
    let [s1, s2] = eigensolve(&build_block(block, a), ep_tol);
    (s1.width() - s2.width()).abs()
}

fn min_rigidity(block: &ChannelBlock, a: f64, ep_tol: f64) -> f64 {
    let [s1, s2] = eigensolve(&build_block(block, a), ep_tol);
    phase_rigidity(&s1).min(phase_rigidity(&s2))
}

fn discriminant_modulus(block: &ChannelBlock, a: f64) -> f64 {
    build_block(block, a).discriminant().modulus
}

/// Index of the largest value in `values[from..=to]`; first wins on ties.
fn argmax_in(values: &[f64], from: usize, to: usize) -> usize {
    let mut best = from;
    for i in from..=to {
        if values[i] > values[best] {
            best = i;
        }
    }
    best
}

/// Golden refinement of a coarse extremum at scan index `k`, bracketed by its
/// neighbours and clipped to `[lo, hi]`.
fn refine_max<F: FnMut(f64) -> f64>(f: F, grid: &[f64], k: usize, lo: f64, hi: f64) -> golden::Extremum {
    let left = grid[k.saturating_sub(1)].max(lo);
    let right = grid[(k + 1).min(grid.len() - 1)].min(hi);
    golden::maximize(f, left, right, REFINE_TOL)
}

fn channel_critical(block: &ChannelBlock, grid: &[f64], ep_tol: f64) -> ChannelCritical {
    let n = grid.len();
    let (lo, hi) = (grid[0], grid[n - 1]);

    let samples: Vec<(f64, f64, f64)> = grid
        .par_iter()
        .map(|&a| {
            (
                width_gap(block, a, ep_tol),
                min_rigidity(block, a, ep_tol),
                discriminant_modulus(block, a),
            )
        })
        .collect();
    let gaps: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let rigidity: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let neg_disc: Vec<f64> = samples.iter().map(|s| -s.2).collect();

    let k_ep = argmax_in(&neg_disc, 0, n - 1);
    let ep = refine_max(|a| -discriminant_modulus(block, a), grid, k_ep, lo, hi);
    let min_discriminant = -ep.value;
    let scale = build_block(block, ep.x).ep_scale();

    let (gmin, gmax) = gaps.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(mn, mx), &g| {
        (mn.min(g), mx.max(g))
    });
    let flat = gmax - gmin <= 1e-12 * gmax.max(1.0);

    let bifurcation = (!flat).then(|| {
        let k = argmax_in(&gaps, 0, n - 1);
        let peak = refine_max(|a| width_gap(block, a, ep_tol), grid, k, lo, hi);

        let threshold = 2.0 * gaps[0].max(gaps[n - 1]);
        let window_idx = (gaps[k] > threshold).then(|| {
            let mut i0 = k;
            while i0 > 0 && gaps[i0 - 1] > threshold {
                i0 -= 1;
            }
            let mut i1 = k;
            while i1 + 1 < n && gaps[i1 + 1] > threshold {
                i1 += 1;
            }
            (i0, i1)
        });
        let (i0, i1) = window_idx.unwrap_or((0, n - 1));
        let (wlo, whi) = (grid[i0], grid[i1]);
        let kr = argmax_in(&rigidity, i0, i1);
        let rig = refine_max(|a| min_rigidity(block, a, ep_tol), grid, kr, wlo, whi);

        Bifurcation {
            a_cr_width: peak.x,
            max_width_gap: peak.value,
            a_cr_rigidity: rig.x,
            max_min_rigidity: rig.value,
            window: window_idx.map(|_| (wlo, whi)),
        }
    });

    ChannelCritical {
        bifurcation,
        a_ep_proximity: ep.x,
        min_discriminant,
        ep_flag: min_discriminant <= ep_tol * scale,
    }
}

pub fn find_critical(
    sys: &TwoChannelSystem,
    a_lo: f64,
    a_hi: f64,
    n_scan: usize,
) -> Result<CriticalReport, CriticalError> {
    find_critical_with(sys, a_lo, a_hi, n_scan, DEFAULT_EP_TOL)
}

pub fn find_critical_with(
    sys: &TwoChannelSystem,
    a_lo: f64,
    a_hi: f64,
    n_scan: usize,
    ep_tol: f64,
) -> Result<CriticalReport, CriticalError> {
    if !(a_lo.is_finite() && a_hi.is_finite() && a_lo < a_hi) {
        return Err(CriticalError::InvalidRange { lo: a_lo, hi: a_hi });
    }
    if n_scan < MIN_SCAN_POINTS {
        return Err(CriticalError::TooFewScanPoints(n_scan));
    }
    let grid = linspace(a_lo, a_hi, n_scan);
    let channels = [
        channel_critical(&sys.channel1, &grid, ep_tol),
        channel_critical(&sys.channel2, &grid, ep_tol),
    ];
    let peak = |c: &ChannelCritical| c.bifurcation.map(|b| b.max_width_gap);
    let primary_channel = match (peak(&channels[0]), peak(&channels[1])) {
        (None, None) => return Err(CriticalError::NoBifurcation),
        (Some(_), None) => 0,
        (None, Some(_)) => 1,
        (Some(g1), Some(g2)) => usize::from(g2 > g1),
    };
    let a_cr = channels[primary_channel]
        .bifurcation
        .map(|b| b.a_cr_width)
        .unwrap_or(f64::NAN);
    Ok(CriticalReport {
        a_lo,
        a_hi,
        n_scan,
        channels,
        primary_channel,
        a_cr,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminantScan {
    pub values: Vec<Discriminant>,
    pub min_modulus: f64,
    pub argmin_a: f64,
    /// The minimum is zero within the relative EP tolerance.
    pub ep_flag: bool,
}

/// `D(a)` along a grid, with its smallest modulus.
pub fn discriminant_scan(block: &ChannelBlock, a_grid: &[f64], ep_tol: f64) -> Result<DiscriminantScan, CriticalError> {
    if a_grid.is_empty() {
        return Err(CriticalError::EmptyGrid);
    }
    let values: Vec<Discriminant> = a_grid.iter().map(|&a| build_block(block, a).discriminant()).collect();
    let mut k = 0;
    for (i, d) in values.iter().enumerate() {
        if d.modulus < values[k].modulus {
            k = i;
        }
    }
    let argmin_a = a_grid[k];
    let min_modulus = values[k].modulus;
    Ok(DiscriminantScan {
        ep_flag: min_modulus <= ep_tol * build_block(block, argmin_a).ep_scale(),
        values,
        min_modulus,
        argmin_a,
    })
}
