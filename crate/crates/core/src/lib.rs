//! Spectra of two-level open quantum systems coupled to one or two decay
//! channels.
//!
//! The building block is a 2×2 complex-symmetric Hamiltonian per channel,
//!
//! ```text
//! ⎛ e₁(a) + (i/2)γ₁   ω               ⎞
//! ⎝ ω                 e₂(a) + (i/2)γ₂ ⎠
//! ```
//!
//! whose eigenvalues `ℰ = E + (i/2)Γ` give resonance energies and widths and
//! whose biorthogonal eigenvectors carry the phase rigidity and the external
//! mixing of the states through the channel. Two such blocks form the
//! block-diagonal two-channel Hamiltonian. From there the crate provides
//!
//! - [`eig`]: closed-form eigenpairs with c-normalization and exceptional-point flags,
//! - [`hamiltonian`]: parametrized blocks and the preset catalog,
//! - [`observables`]: rigidity, norms, mixing coefficients and branch-tracked sweeps,
//! - [`critical`]: width-bifurcation and rigidity extrema, discriminant scans,
//! - [`scattering`]: the resonance S-matrix, transmission spectra and grids,
//! - [`config`] and [`output`]: run configuration, CSV/JSON/SVG artifacts.
//!
//! ```
//! use epscan::{critical::find_critical, hamiltonian::fig1_left};
//!
//! let report = find_critical(&fig1_left(), 0.0, 1.3, 1301).unwrap();
//! assert!((report.a_cr - 2.0 / 3.0).abs() < 1e-5);
//! ```

pub mod config;
pub mod critical;
pub mod eig;
pub mod golden;
pub mod hamiltonian;
pub mod observables;
pub mod output;
pub mod scattering;

pub use eig::{eigensolve, Complex2x2Symmetric, EigenSolution, C64};
pub use hamiltonian::{ChannelBlock, LevelTrajectory, TwoChannelSystem};
