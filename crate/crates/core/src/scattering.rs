//! Resonance S-matrix and transmission spectra.
//!
//! The S-matrix is the unitary product of Breit-Wigner factors
//! `(E − E_i − iΓ̃_i/2) / (E − E_i + iΓ̃_i/2)` over all resonance poles,
//! where `Γ̃ = |Γ|` is the physical (positive) width. All four eigenvalues of
//! the two-channel system enter one S, and the transmission is
//! `T = |1 − S|² / 4`, so an isolated resonance peaks at exactly `T = 1`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::eig::{eigensolve, C64, DEFAULT_EP_TOL};
use crate::hamiltonian::{build_system, TwoChannelSystem};
use crate::observables::SweepRecord;

/// Poles with `|Γ|` at or below this are rejected.
pub const MIN_WIDTH: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResonancePole {
    pub energy: f64,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatteringError {
    #[error("resonance at E = {energy} has vanishing width {width:e} (a = {a:?})")]
    DegenerateWidth { energy: f64, width: f64, a: Option<f64> },
    #[error("the pole list is empty")]
    NoPoles,
    #[error("grid `{0}` is empty or not strictly increasing")]
    InvalidGrid(&'static str),
    #[error("sweep and transmission grid use different a values")]
    GridMismatch,
    #[error("correlation undefined: the {0} series is constant")]
    UndefinedCorrelation(&'static str),
}

impl ResonancePole {
    pub fn new(energy: f64, width: f64) -> Result<Self, ScatteringError> {
        if width.abs() <= MIN_WIDTH || !width.is_finite() {
            return Err(ScatteringError::DegenerateWidth { energy, width, a: None });
        }
        Ok(Self {
            energy,
            width: width.abs(),
        })
    }

    /// Pole from a complex eigenvalue `E + (i/2)Γ`.
    pub fn from_eigenvalue(value: C64) -> Result<Self, ScatteringError> {
        Self::new(value.re, 2.0 * value.im)
    }

    fn factor(&self, e: f64) -> C64 {
        let half = 0.5 * self.width;
        let d = e - self.energy;
        C64::new(d, -half) / C64::new(d, half)
    }
}

pub fn s_matrix(poles: &[ResonancePole], e: f64) -> C64 {
    poles.iter().fold(C64::new(1.0, 0.0), |s, p| s * p.factor(e))
}

pub fn transmission_from_s(s: C64) -> f64 {
    (C64::new(1.0, 0.0) - s).norm_sqr() / 4.0
}

pub fn transmission_from_poles(poles: &[ResonancePole], e: f64) -> Result<f64, ScatteringError> {
    if poles.is_empty() {
        return Err(ScatteringError::NoPoles);
    }
    Ok(transmission_from_s(s_matrix(poles, e)))
}

/// The four resonance poles of the system at `a`.
pub fn poles_at(sys: &TwoChannelSystem, a: f64) -> Result<[ResonancePole; 4], ScatteringError> {
    let [b1, b2] = build_system(sys, a);
    let [s1, s2] = eigensolve(&b1, DEFAULT_EP_TOL);
    let [s3, s4] = eigensolve(&b2, DEFAULT_EP_TOL);
    let mut out = [ResonancePole {
        energy: 0.0,
        width: 1.0,
    }; 4];
    for (slot, s) in out.iter_mut().zip([s1, s2, s3, s4]) {
        *slot = ResonancePole::from_eigenvalue(s.value).map_err(|e| match e {
            ScatteringError::DegenerateWidth { energy, width, .. } => ScatteringError::DegenerateWidth {
                energy,
                width,
                a: Some(a),
            },
            other => other,
        })?;
    }
    Ok(out)
}

pub fn transmission(sys: &TwoChannelSystem, a: f64, e: f64) -> Result<f64, ScatteringError> {
    transmission_from_poles(&poles_at(sys, a)?, e)
}

/// `T(E)` along an energy grid at fixed `a`.
pub fn transmission_profile(sys: &TwoChannelSystem, a: f64, e_grid: &[f64]) -> Result<Vec<f64>, ScatteringError> {
    let poles = poles_at(sys, a)?;
    Ok(e_grid
        .iter()
        .map(|&e| transmission_from_s(s_matrix(&poles, e)))
        .collect())
}

/// Local maxima `(E, T)` of a sampled profile: strictly above the left
/// neighbour and not below the right one.
pub fn local_maxima(e_grid: &[f64], values: &[f64]) -> Vec<(f64, f64)> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i] > values[i - 1] && values[i] >= values[i + 1])
        .map(|i| (e_grid[i], values[i]))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionGrid {
    pub e_grid: Vec<f64>,
    pub a_grid: Vec<f64>,
    /// `values[i][j] = T(e_grid[j], a_grid[i])`.
    pub values: Vec<Vec<f64>>,
    pub a_cr_marker: Option<f64>,
}

impl TransmissionGrid {
    pub fn with_marker(mut self, a_cr: f64) -> Self {
        self.a_cr_marker = Some(a_cr);
        self
    }

    /// Mean of `T` over the energy grid, per `a`.
    pub fn energy_averages(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|row| row.iter().sum::<f64>() / row.len() as f64)
            .collect()
    }
}

fn check_grid(g: &[f64], name: &'static str) -> Result<(), ScatteringError> {
    if g.is_empty() || g.iter().any(|x| !x.is_finite()) || g.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ScatteringError::InvalidGrid(name));
    }
    Ok(())
}

/// `T` on the full `(a, E)` product grid. Rows are computed in parallel and
/// assembled in grid order.
pub fn transmission_grid(
    sys: &TwoChannelSystem,
    e_grid: &[f64],
    a_grid: &[f64],
) -> Result<TransmissionGrid, ScatteringError> {
    check_grid(e_grid, "e_grid")?;
    check_grid(a_grid, "a_grid")?;
    let values = a_grid
        .par_iter()
        .map(|&a| transmission_profile(sys, a, e_grid))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TransmissionGrid {
        e_grid: e_grid.to_vec(),
        a_grid: a_grid.to_vec(),
        values,
        a_cr_marker: None,
    })
}

pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64, ScatteringError> {
    assert_eq!(x.len(), y.len());
    if x.len() < 2 {
        return Err(ScatteringError::UndefinedCorrelation("first"));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || x.iter().all(|v| *v == x[0]) {
        return Err(ScatteringError::UndefinedCorrelation("first"));
    }
    if syy == 0.0 || y.iter().all(|v| *v == y[0]) {
        return Err(ScatteringError::UndefinedCorrelation("second"));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Pearson correlation over `a` between the mean phase rigidity of the four
/// states and the energy-averaged transmission.
pub fn rigidity_transmission_correlation(
    sweep: &[SweepRecord],
    grid: &TransmissionGrid,
) -> Result<f64, ScatteringError> {
    if sweep.len() != grid.a_grid.len() || sweep.iter().zip(&grid.a_grid).any(|(r, a)| r.a != *a) {
        return Err(ScatteringError::GridMismatch);
    }
    let rigidity: Vec<f64> = sweep.iter().map(SweepRecord::mean_rigidity).collect();
    pearson(&rigidity, &grid.energy_averages()).map_err(|e| match e {
        ScatteringError::UndefinedCorrelation("first") => ScatteringError::UndefinedCorrelation("rigidity"),
        ScatteringError::UndefinedCorrelation(_) => ScatteringError::UndefinedCorrelation("transmission"),
        other => other,
    })
}
