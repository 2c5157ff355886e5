//! Per-state spectroscopic observables and parameter sweeps.

use rayon::prelude::*;
use thiserror::Error;

use crate::eig::{bilinear, eigensolve, hermitian, Complex2x2Symmetric, Discriminant, EigenSolution, C64};
use crate::hamiltonian::{build_system, ChannelBlock, TwoChannelSystem};

/// Observables of one eigenstate, expressed in the basis of the unmixed
/// (`ω = 0`) Hamiltonian, whose eigenvectors are the unit vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateObservables {
    /// `r = |ΦᵀΦ| / Φ†Φ`, in [0, 1].
    pub rigidity: f64,
    /// `A = Φ†Φ = 1/r`; infinite at an exceptional point.
    pub a_norm: f64,
    /// `B = ⟨Φ_i|Φ_j⟩` with the other state of the same block.
    pub b_overlap: C64,
    /// `(b_i1, b_i2)`; `None` for self-orthogonal states.
    pub mixing_row: Option<[C64; 2]>,
    /// `(|b_i1|², |b_i2|²)`; `None` for self-orthogonal states.
    pub mixing_weights: Option<[f64; 2]>,
    /// `‖W Φ‖` of the source term.
    pub source_term: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("mixing coefficients are undefined for a self-orthogonal state")]
pub struct MixingUndefined;

pub fn phase_rigidity(sol: &EigenSolution) -> f64 {
    if sol.is_ep_member {
        return 0.0;
    }
    let herm = hermitian(&sol.vector, &sol.vector).re;
    (bilinear(&sol.vector, &sol.vector).norm() / herm).min(1.0)
}

/// `b_ij = ⟨Φ_j^0*|Φ_i⟩`, i.e. the components of the c-normalized vector.
pub fn mixing_coefficients(sol: &EigenSolution) -> Result<[C64; 2], MixingUndefined> {
    if sol.c_norm_ok {
        Ok(sol.vector)
    } else {
        Err(MixingUndefined)
    }
}

/// Modulus of the source term `W Φ` with `W = [[0, ω], [ω, 0]]`.
pub fn source_term_magnitude(block: &ChannelBlock, sol: &EigenSolution) -> f64 {
    let w = Complex2x2Symmetric::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0), block.omega);
    let driven = w.apply(sol.vector);
    (driven[0].norm_sqr() + driven[1].norm_sqr()).sqrt()
}

pub fn state_observables(block: &ChannelBlock, sol: &EigenSolution, partner: &EigenSolution) -> StateObservables {
    let rigidity = phase_rigidity(sol);
    let a_norm = if sol.is_ep_member {
        f64::INFINITY
    } else {
        hermitian(&sol.vector, &sol.vector).re
    };
    let mixing_row = mixing_coefficients(sol).ok();
    StateObservables {
        rigidity,
        a_norm,
        b_overlap: hermitian(&sol.vector, &partner.vector),
        mixing_row,
        mixing_weights: mixing_row.map(|b| [b[0].norm_sqr(), b[1].norm_sqr()]),
        source_term: source_term_magnitude(block, sol),
    }
}

/// Eigen-data of one channel block at one sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelRecord {
    /// Solutions in the solver's order (ascending real part).
    pub solutions: [EigenSolution; 2],
    pub observables: [StateObservables; 2],
    /// Branch label (1 or 2) of each entry of `solutions`.
    pub branch_ids: [u8; 2],
    pub discriminant: Discriminant,
    pub ep_flag: bool,
}

impl ChannelRecord {
    fn solve(block: &ChannelBlock, m: &Complex2x2Symmetric, ep_tol: f64) -> Self {
        let solutions = eigensolve(m, ep_tol);
        let observables = [
            state_observables(block, &solutions[0], &solutions[1]),
            state_observables(block, &solutions[1], &solutions[0]),
        ];
        Self {
            solutions,
            observables,
            branch_ids: [1, 2],
            discriminant: m.discriminant(),
            ep_flag: solutions[0].is_ep_member,
        }
    }

    /// Index into `solutions` of the state carrying `branch` (1 or 2).
    pub fn index_of_branch(&self, branch: u8) -> usize {
        if self.branch_ids[0] == branch {
            0
        } else {
            1
        }
    }

    pub fn branch(&self, branch: u8) -> (&EigenSolution, &StateObservables) {
        let k = self.index_of_branch(branch);
        (&self.solutions[k], &self.observables[k])
    }

    /// `|Γ₁ − Γ₂|`, independent of labelling.
    pub fn width_gap(&self) -> f64 {
        (self.solutions[0].width() - self.solutions[1].width()).abs()
    }

    pub fn min_rigidity(&self) -> f64 {
        self.observables[0].rigidity.min(self.observables[1].rigidity)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub a: f64,
    pub channels: [ChannelRecord; 2],
}

impl SweepRecord {
    pub fn evaluate(sys: &TwoChannelSystem, a: f64, ep_tol: f64) -> Self {
        let blocks = build_system(sys, a);
        let ch = sys.channels();
        Self {
            a,
            channels: [
                ChannelRecord::solve(ch[0], &blocks[0], ep_tol),
                ChannelRecord::solve(ch[1], &blocks[1], ep_tol),
            ],
        }
    }

    /// Mean rigidity over all four states.
    pub fn mean_rigidity(&self) -> f64 {
        self.channels
            .iter()
            .flat_map(|c| c.observables.iter().map(|o| o.rigidity))
            .sum::<f64>()
            / 4.0
    }
}

fn swapped(ids: [u8; 2]) -> [u8; 2] {
    [ids[1], ids[0]]
}

/// Assign branch labels to freshly solved eigenpairs so that each branch
/// continues from its value at the previous sweep point.
///
/// Per channel, of the two possible pairings the one with the smaller summed
/// distance wins; ties and exceptional points keep the previous labelling.
pub fn track_branches(prev: &SweepRecord, next_raw: &[[EigenSolution; 2]; 2]) -> [[u8; 2]; 2] {
    let mut out = [[1, 2]; 2];
    for (c, (old, new)) in prev.channels.iter().zip(next_raw).enumerate() {
        let keep = old.branch_ids;
        if new[0].is_ep_member || old.ep_flag {
            out[c] = keep;
            continue;
        }
        let value_of = |b: u8| old.branch(b).0.value;
        let cost = |ids: [u8; 2]| (new[0].value - value_of(ids[0])).norm() + (new[1].value - value_of(ids[1])).norm();
        let alt = swapped(keep);
        out[c] = if cost(alt) < cost(keep) { alt } else { keep };
    }
    out
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("sweep grid needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("sweep grid must be strictly increasing (violated at index {index}: {prev} -> {next})")]
    NotIncreasing { index: usize, prev: f64, next: f64 },
    #[error("sweep grid contains a non-finite value at index {0}")]
    NonFinite(usize),
}

pub fn validate_grid(a_grid: &[f64]) -> Result<(), SweepError> {
    if a_grid.len() < 2 {
        return Err(SweepError::TooFewPoints(a_grid.len()));
    }
    if let Some(i) = a_grid.iter().position(|a| !a.is_finite()) {
        return Err(SweepError::NonFinite(i));
    }
    for (i, w) in a_grid.windows(2).enumerate() {
        if w[1] <= w[0] {
            return Err(SweepError::NotIncreasing {
                index: i + 1,
                prev: w[0],
                next: w[1],
            });
        }
    }
    Ok(())
}

/// Evaluate every grid point (in parallel), then label branches sequentially.
pub fn run_sweep(sys: &TwoChannelSystem, a_grid: &[f64], ep_tol: f64) -> Result<Vec<SweepRecord>, SweepError> {
    validate_grid(a_grid)?;
    let mut records: Vec<SweepRecord> = a_grid
        .par_iter()
        .map(|&a| SweepRecord::evaluate(sys, a, ep_tol))
        .collect();
    for k in 1..records.len() {
        let raw = [records[k].channels[0].solutions, records[k].channels[1].solutions];
        let ids = track_branches(&records[k - 1], &raw);
        for (ch, id) in records[k].channels.iter_mut().zip(ids) {
            ch.branch_ids = id;
        }
    }
    Ok(records)
}

/// A branch step that moved further than the continuity bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchJump {
    /// Index of the later point of the step.
    pub index: usize,
    pub channel: usize,
    pub branch: u8,
    pub step: f64,
    pub bound: f64,
}

/// Steps where a branch moves more than `factor` times the median step of
/// that branch. Steps touching an exceptional point are skipped.
pub fn branch_jumps(records: &[SweepRecord], factor: f64) -> Vec<BranchJump> {
    let mut out = Vec::new();
    for channel in 0..2 {
        for branch in [1u8, 2] {
            let steps: Vec<f64> = records
                .windows(2)
                .map(|w| {
                    (w[1].channels[channel].branch(branch).0.value - w[0].channels[channel].branch(branch).0.value)
                        .norm()
                })
                .collect();
            if steps.is_empty() {
                continue;
            }
            let mut sorted = steps.clone();
            sorted.sort_by(f64::total_cmp);
            let median = sorted[sorted.len() / 2];
            let bound = factor * median;
            for (i, &step) in steps.iter().enumerate() {
                let touches_ep = records[i].channels[channel].ep_flag || records[i + 1].channels[channel].ep_flag;
                if step > bound && !touches_ep {
                    out.push(BranchJump {
                        index: i + 1,
                        channel,
                        branch,
                        step,
                        bound,
                    });
                }
            }
        }
    }
    out
}

/// `n` equally spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}
