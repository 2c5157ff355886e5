//! Run configuration and its line-oriented `key = value` text format.
//!
//! ```text
//! # fig1-right written out in full
//! state1.e_intercept = 1
//! state1.e_slope = -0.5
//! state2.e_intercept = 0
//! state2.e_slope = 1
//! channel1.state1.gamma_half = -0.4
//! channel1.state2.gamma_half = -0.35
//! channel2.state1.gamma_half = -0.08
//! channel2.state2.gamma_half = -0.09
//! channel1.omega_im = 0.5
//! channel2.omega_im = 0.1
//! outputs = sweep, critical
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Keys are dotted;
//! unknown or repeated keys are rejected. `stateK.*` energy keys apply to both
//! channels, `channelC.stateK.*` keys to one. With `preset = NAME` the preset
//! supplies every system parameter and explicit keys override it; without a
//! preset all parameters must be given.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::eig::DEFAULT_EP_TOL;
use crate::hamiltonian::{preset, TwoChannelSystem, UnknownPreset};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridRange {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl GridRange {
    pub fn new(lo: f64, hi: f64, n: usize) -> Self {
        Self { lo, hi, n }
    }

    pub fn points(&self) -> Vec<f64> {
        crate::observables::linspace(self.lo, self.hi, self.n)
    }
}

impl FromStr for GridRange {
    type Err = String;

    /// `LO:HI:N`
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected LO:HI:N, got `{s}`"));
        }
        let lo = parts[0]
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("LO `{}`: {e}", parts[0]))?;
        let hi = parts[1]
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("HI `{}`: {e}", parts[1]))?;
        let n = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("N `{}`: {e}", parts[2]))?;
        Ok(Self { lo, hi, n })
    }
}

pub const DEFAULT_A_RANGE: GridRange = GridRange {
    lo: 0.0,
    hi: 1.3,
    n: 1301,
};
pub const DEFAULT_E_RANGE: GridRange = GridRange {
    lo: -1.0,
    hi: 2.0,
    n: 3001,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Sweep,
    Critical,
    Spectrum,
    Contour,
    Correlation,
}

impl Output {
    pub const ALL: [Output; 5] = [
        Output::Sweep,
        Output::Critical,
        Output::Spectrum,
        Output::Contour,
        Output::Correlation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Output::Sweep => "sweep",
            Output::Critical => "critical",
            Output::Spectrum => "spectrum",
            Output::Contour => "contour",
            Output::Correlation => "correlation",
        }
    }
}

impl FromStr for Output {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Output::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| format!("unknown output `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            _ => Err(format!("unknown format `{s}` (expected csv, json or svg)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub preset: Option<String>,
    pub system: TwoChannelSystem,
    pub a_range: GridRange,
    pub e_range: GridRange,
    pub ep_tol: f64,
    pub outputs: BTreeSet<Output>,
    /// Restrict artifacts to one format; `None` writes each output's defaults.
    pub format: Option<Format>,
    /// `a` values for `spectrum`; `None` uses `a_cr` and both range ends.
    pub spectrum_a: Option<Vec<f64>>,
    pub out_dir: PathBuf,
}

impl RunConfig {
    /// Defaults around a named preset.
    pub fn from_preset(name: &str) -> Result<Self, UnknownPreset> {
        Ok(Self {
            preset: Some(name.to_string()),
            system: preset(name)?,
            a_range: DEFAULT_A_RANGE,
            e_range: DEFAULT_E_RANGE,
            ep_tol: DEFAULT_EP_TOL,
            outputs: [Output::Sweep, Output::Critical].into_iter().collect(),
            format: None,
            spectrum_a: None,
            out_dir: PathBuf::from("out"),
        })
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (key, r) in [("a_range", &self.a_range), ("e_range", &self.e_range)] {
            if !(r.lo.is_finite() && r.hi.is_finite()) {
                return Err(ConfigError::invalid(key, "bounds must be finite"));
            }
            if r.lo >= r.hi {
                return Err(ConfigError::invalid(
                    key,
                    format!("lo ({}) must be below hi ({})", r.lo, r.hi),
                ));
            }
            if r.n < 2 {
                return Err(ConfigError::invalid(key, format!("n must be at least 2, got {}", r.n)));
            }
        }
        if !(self.ep_tol.is_finite() && self.ep_tol >= 0.0) {
            return Err(ConfigError::invalid("ep_tol", "must be a finite non-negative number"));
        }
        if self.outputs.is_empty() {
            return Err(ConfigError::invalid("outputs", "at least one output is required"));
        }
        if let Some(list) = &self.spectrum_a {
            if list.is_empty() || list.iter().any(|a| !a.is_finite()) {
                return Err(ConfigError::invalid(
                    "spectrum_a",
                    "must be a non-empty list of finite numbers",
                ));
            }
        }
        for (c, ch) in self.system.channels().iter().enumerate() {
            let vals = [
                ch.state1.e_intercept,
                ch.state1.e_slope,
                ch.state1.gamma_half,
                ch.state2.e_intercept,
                ch.state2.e_slope,
                ch.state2.gamma_half,
                ch.omega.re,
                ch.omega.im,
            ];
            if vals.iter().any(|v| !v.is_finite()) {
                return Err(ConfigError::invalid(
                    format!("channel{}", c + 1),
                    "parameters must be finite",
                ));
            }
        }
        if self.out_dir.as_os_str().is_empty() {
            return Err(ConfigError::invalid("out_dir", "must not be empty"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid `{key}`: {message}")]
    Invalid { key: String, message: String },
    #[error(transparent)]
    UnknownPreset(#[from] UnknownPreset),
}

impl ConfigError {
    pub fn invalid(key: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError::Invalid {
            key: key.into(),
            message: message.into(),
        }
    }
}

const STATE_FIELDS: [&str; 3] = ["e_intercept", "e_slope", "gamma_half"];

fn is_known_key(key: &str) -> bool {
    const TOP: [&str; 12] = [
        "preset",
        "a_range.lo",
        "a_range.hi",
        "a_range.n",
        "e_range.lo",
        "e_range.hi",
        "e_range.n",
        "ep_tol",
        "outputs",
        "format",
        "spectrum_a",
        "out_dir",
    ];
    if TOP.contains(&key) {
        return true;
    }
    let parts: Vec<&str> = key.split('.').collect();
    let state = |s: &str| s == "state1" || s == "state2";
    let channel = |s: &str| s == "channel1" || s == "channel2";
    match parts.as_slice() {
        [s, "e_intercept" | "e_slope"] => state(s),
        [c, "omega_re" | "omega_im"] => channel(c),
        [c, s, f] => channel(c) && state(s) && STATE_FIELDS.contains(f),
        _ => false,
    }
}

struct Entry {
    line: usize,
    value: String,
}

fn number<T: FromStr>(entries: &BTreeMap<String, Entry>, key: &str) -> Result<Option<T>, ConfigError>
where
    T::Err: fmt::Display,
{
    entries
        .get(key)
        .map(|e| {
            e.value
                .parse::<T>()
                .map_err(|err| ConfigError::invalid(key, format!("line {}: `{}`: {err}", e.line, e.value)))
        })
        .transpose()
}

fn list<T: FromStr>(entries: &BTreeMap<String, Entry>, key: &str) -> Result<Option<Vec<T>>, ConfigError>
where
    T::Err: fmt::Display,
{
    entries
        .get(key)
        .map(|e| {
            e.value
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<T>()
                        .map_err(|err| ConfigError::invalid(key, format!("line {}: {err}", e.line)))
                })
                .collect()
        })
        .transpose()
}

/// Parse and validate a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(eq) = raw.find('=') else {
            let column = raw.len() - raw.trim_start().len() + 1;
            return Err(ConfigError::Syntax {
                line,
                column,
                message: "expected `key = value`".into(),
            });
        };
        let key = raw[..eq].trim();
        if key.is_empty() {
            return Err(ConfigError::Syntax {
                line,
                column: eq + 1,
                message: "missing key before `=`".into(),
            });
        }
        if !is_known_key(key) {
            return Err(ConfigError::invalid(key, format!("line {line}: unknown key")));
        }
        let value = raw[eq + 1..].trim().to_string();
        if let Some(prev) = entries.get(key) {
            return Err(ConfigError::invalid(
                key,
                format!("line {line}: repeats line {}", prev.line),
            ));
        }
        entries.insert(key.to_string(), Entry { line, value });
    }

    let preset_name = entries.get("preset").map(|e| e.value.clone());
    let base = preset_name.as_deref().map(preset).transpose()?;
    let mut system = base.unwrap_or_else(crate::hamiltonian::fig2);

    for c in 0..2 {
        let ch = system.channel_mut(c);
        for (s, traj) in [&mut ch.state1, &mut ch.state2].into_iter().enumerate() {
            for field in STATE_FIELDS {
                let own = format!("channel{}.state{}.{field}", c + 1, s + 1);
                let shared = format!("state{}.{field}", s + 1);
                let value = match number::<f64>(&entries, &own)? {
                    Some(v) => Some(v),
                    None if field != "gamma_half" => number::<f64>(&entries, &shared)?,
                    None => None,
                };
                let slot = match field {
                    "e_intercept" => &mut traj.e_intercept,
                    "e_slope" => &mut traj.e_slope,
                    _ => &mut traj.gamma_half,
                };
                match value {
                    Some(v) => *slot = v,
                    None if base.is_none() => {
                        return Err(ConfigError::invalid(own, "required when no preset is given"));
                    }
                    None => {}
                }
            }
        }
        let re_key = format!("channel{}.omega_re", c + 1);
        let im_key = format!("channel{}.omega_im", c + 1);
        let re = number::<f64>(&entries, &re_key)?;
        let im = number::<f64>(&entries, &im_key)?;
        if base.is_none() && im.is_none() {
            return Err(ConfigError::invalid(im_key, "required when no preset is given"));
        }
        if base.is_none() {
            ch.omega.re = re.unwrap_or(0.0);
        } else if let Some(re) = re {
            ch.omega.re = re;
        }
        if let Some(im) = im {
            ch.omega.im = im;
        }
    }

    let range = |name: &str, default: GridRange| -> Result<GridRange, ConfigError> {
        Ok(GridRange {
            lo: number(&entries, &format!("{name}.lo"))?.unwrap_or(default.lo),
            hi: number(&entries, &format!("{name}.hi"))?.unwrap_or(default.hi),
            n: number(&entries, &format!("{name}.n"))?.unwrap_or(default.n),
        })
    };

    let cfg = RunConfig {
        preset: preset_name,
        system,
        a_range: range("a_range", DEFAULT_A_RANGE)?,
        e_range: range("e_range", DEFAULT_E_RANGE)?,
        ep_tol: number(&entries, "ep_tol")?.unwrap_or(DEFAULT_EP_TOL),
        outputs: match list::<Output>(&entries, "outputs")? {
            Some(v) => v.into_iter().collect(),
            None => [Output::Sweep, Output::Critical].into_iter().collect(),
        },
        format: number(&entries, "format")?,
        spectrum_a: list(&entries, "spectrum_a")?,
        out_dir: entries
            .get("out_dir")
            .map(|e| PathBuf::from(&e.value))
            .unwrap_or_else(|| PathBuf::from("out")),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Write a configuration that parses back to an equal [`RunConfig`].
///
/// Every system parameter is written explicitly, so the text stays exact
/// even when a preset name is present.
pub fn serialize_config(cfg: &RunConfig) -> String {
    let mut out = String::new();
    if let Some(p) = &cfg.preset {
        let _ = writeln!(out, "preset = {p}");
    }
    for (c, ch) in cfg.system.channels().iter().enumerate() {
        for (s, traj) in [&ch.state1, &ch.state2].into_iter().enumerate() {
            let prefix = format!("channel{}.state{}", c + 1, s + 1);
            let _ = writeln!(out, "{prefix}.e_intercept = {:?}", traj.e_intercept);
            let _ = writeln!(out, "{prefix}.e_slope = {:?}", traj.e_slope);
            let _ = writeln!(out, "{prefix}.gamma_half = {:?}", traj.gamma_half);
        }
        let _ = writeln!(out, "channel{}.omega_re = {:?}", c + 1, ch.omega.re);
        let _ = writeln!(out, "channel{}.omega_im = {:?}", c + 1, ch.omega.im);
    }
    for (name, r) in [("a_range", &cfg.a_range), ("e_range", &cfg.e_range)] {
        let _ = writeln!(out, "{name}.lo = {:?}", r.lo);
        let _ = writeln!(out, "{name}.hi = {:?}", r.hi);
        let _ = writeln!(out, "{name}.n = {}", r.n);
    }
    let _ = writeln!(out, "ep_tol = {:?}", cfg.ep_tol);
    let outputs: Vec<&str> = cfg.outputs.iter().map(|o| o.name()).collect();
    let _ = writeln!(out, "outputs = {}", outputs.join(", "));
    if let Some(f) = cfg.format {
        let _ = writeln!(out, "format = {f}");
    }
    if let Some(list) = &cfg.spectrum_a {
        let items: Vec<String> = list.iter().map(|a| format!("{a:?}")).collect();
        let _ = writeln!(out, "spectrum_a = {}", items.join(", "));
    }
    let _ = writeln!(out, "out_dir = {}", cfg.out_dir.display());
    out
}
