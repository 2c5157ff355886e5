//! One-channel 2×2 blocks and the block-diagonal two-channel Hamiltonian.
//!
//! Each channel `c` carries its own copy of the two localized states with
//! complex energies `ε_i^(c) = e_i(a) + (i/2) γ_i^(c)` and a coupling `ω^(c)`
//! through that channel. States belonging to different channels never
//! couple, so the 4×4 matrix is stored as its two 2×2 blocks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eig::{Complex2x2Symmetric, C64};

/// Complex energy `e + (i/2) γ` of a localized state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexEnergy {
    pub e: f64,
    pub gamma: f64,
}

impl ComplexEnergy {
    pub fn new(e: f64, gamma: f64) -> Self {
        Self { e, gamma }
    }

    pub fn as_complex(&self) -> C64 {
        C64::new(self.e, 0.5 * self.gamma)
    }
}

/// A state whose energy moves linearly with the sweep parameter while its
/// width stays fixed: `e(a) = e_intercept + e_slope · a`, `γ/2 = gamma_half`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelTrajectory {
    pub e_intercept: f64,
    pub e_slope: f64,
    pub gamma_half: f64,
}

impl LevelTrajectory {
    pub fn new(e_intercept: f64, e_slope: f64, gamma_half: f64) -> Self {
        Self {
            e_intercept,
            e_slope,
            gamma_half,
        }
    }

    pub fn energy_at(&self, a: f64) -> f64 {
        self.e_intercept + self.e_slope * a
    }

    pub fn at(&self, a: f64) -> ComplexEnergy {
        ComplexEnergy::new(self.energy_at(a), 2.0 * self.gamma_half)
    }
}

/// Two states coupled through one channel with strength `omega`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelBlock {
    pub state1: LevelTrajectory,
    pub state2: LevelTrajectory,
    #[serde(with = "complex_serde")]
    pub omega: C64,
}

impl ChannelBlock {
    pub fn new(state1: LevelTrajectory, state2: LevelTrajectory, omega: C64) -> Self {
        Self { state1, state2, omega }
    }

    /// Same block with the external mixing switched off.
    pub fn without_mixing(&self) -> Self {
        Self {
            omega: C64::new(0.0, 0.0),
            ..*self
        }
    }
}

/// Two independent channel blocks forming the block-diagonal 4×4 Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoChannelSystem {
    pub channel1: ChannelBlock,
    pub channel2: ChannelBlock,
}

impl TwoChannelSystem {
    pub fn new(channel1: ChannelBlock, channel2: ChannelBlock) -> Self {
        Self { channel1, channel2 }
    }

    pub fn channels(&self) -> [&ChannelBlock; 2] {
        [&self.channel1, &self.channel2]
    }

    pub fn channel_mut(&mut self, index: usize) -> &mut ChannelBlock {
        match index {
            0 => &mut self.channel1,
            1 => &mut self.channel2,
            _ => panic!("channel index {index} out of range"),
        }
    }

    pub fn without_mixing(&self) -> Self {
        Self::new(self.channel1.without_mixing(), self.channel2.without_mixing())
    }
}

pub fn build_block(b: &ChannelBlock, a: f64) -> Complex2x2Symmetric {
    Complex2x2Symmetric::new(b.state1.at(a).as_complex(), b.state2.at(a).as_complex(), b.omega)
}

pub fn build_system(s: &TwoChannelSystem, a: f64) -> [Complex2x2Symmetric; 2] {
    [build_block(&s.channel1, a), build_block(&s.channel2, a)]
}

/// Dense 4×4 matrix with explicit zero cross-blocks, for checks only.
pub fn dense_matrix(s: &TwoChannelSystem, a: f64) -> [[C64; 4]; 4] {
    let zero = C64::new(0.0, 0.0);
    let mut out = [[zero; 4]; 4];
    for (k, block) in build_system(s, a).iter().enumerate() {
        let o = 2 * k;
        let m = block.to_array();
        for i in 0..2 {
            for j in 0..2 {
                out[o + i][o + j] = m[i][j];
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown preset `{0}` (known: {known})", known = preset_names().join(", "))]
pub struct UnknownPreset(pub String);

fn imag(x: f64) -> C64 {
    C64::new(0.0, x)
}

fn two_state_block(gamma_half1: f64, gamma_half2: f64, omega: C64) -> ChannelBlock {
    // e1 = 1 − a/2, e2 = a
    ChannelBlock::new(
        LevelTrajectory::new(1.0, -0.5, gamma_half1),
        LevelTrajectory::new(0.0, 1.0, gamma_half2),
        omega,
    )
}

/// Equal couplings `ω = 0.5i` in both channels; widths swapped between channels.
pub fn fig1_left() -> TwoChannelSystem {
    TwoChannelSystem::new(
        two_state_block(-0.4, -0.35, imag(0.5)),
        two_state_block(-0.35, -0.4, imag(0.5)),
    )
}

/// Strong coupling `ω = 0.5i` in channel 1, weak `ω = 0.1i` and narrow states in channel 2.
pub fn fig1_right() -> TwoChannelSystem {
    TwoChannelSystem::new(
        two_state_block(-0.4, -0.35, imag(0.5)),
        two_state_block(-0.08, -0.09, imag(0.1)),
    )
}

/// `fig1-left` without external mixing.
pub fn fig2() -> TwoChannelSystem {
    fig1_left().without_mixing()
}

/// Equal widths inside each channel; the level crossing at `a = 2/3` is the
/// point of maximal width bifurcation by symmetry.
pub fn symmetric() -> TwoChannelSystem {
    TwoChannelSystem::new(
        two_state_block(-0.4, -0.4, imag(0.5)),
        two_state_block(-0.35, -0.35, imag(0.5)),
    )
}

type Builder = fn() -> TwoChannelSystem;

const PRESETS: [(&str, Builder); 4] = [
    ("fig1-left", fig1_left),
    ("fig1-right", fig1_right),
    ("fig2", fig2),
    ("symmetric", symmetric),
];

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|(n, _)| *n).collect()
}

/// The named catalog, in a fixed order.
pub fn presets() -> Vec<(&'static str, TwoChannelSystem)> {
    PRESETS.iter().map(|(n, f)| (*n, f())).collect()
}

pub fn preset(name: &str) -> Result<TwoChannelSystem, UnknownPreset> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, f)| f())
        .ok_or_else(|| UnknownPreset(name.to_string()))
}

pub(crate) mod complex_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::eig::C64;

    pub fn serialize<S: Serializer>(c: &C64, s: S) -> Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(C64::new(re, im))
    }
}
