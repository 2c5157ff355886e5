use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use epscan::config::{parse_config, ConfigError, Format, GridRange, Output, RunConfig};
use epscan::hamiltonian::{preset, presets};
use epscan::output::run;

#[derive(Parser)]
#[command(
    name = "epscan",
    version,
    about = "Eigenvalues, phase rigidity and transmission of two-channel two-level systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Configuration file (`key = value` lines)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Preset system; replaces the system of --config
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Output directory
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Sweep parameter grid LO:HI:N
    #[arg(long, global = true, allow_hyphen_values = true)]
    a_range: Option<GridRange>,
    /// Energy grid LO:HI:N
    #[arg(long, global = true, allow_hyphen_values = true)]
    e_range: Option<GridRange>,
    /// Restrict the artifact format (csv, json, svg)
    #[arg(long, global = true)]
    format: Option<Format>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Eigenvalues and eigenfunction observables along the a grid
    Sweep,
    /// Critical parameter values per channel
    Critical,
    /// Transmission profiles T(E) at a_cr and the a-range ends
    Spectrum,
    /// Transmission over the (a, E) grid as CSV and SVG heatmap
    Contour,
    /// Rigidity/transmission correlation over the bifurcation window
    Correlate,
    /// List the preset catalog
    Presets,
}

fn build_config(cli: &Cli, text: Option<&str>, output: Output) -> Result<RunConfig, ConfigError> {
    let mut cfg = match text {
        Some(text) => parse_config(text)?,
        None => RunConfig::from_preset(cli.preset.as_deref().unwrap_or("fig1-left"))?,
    };
    if let Some(name) = &cli.preset {
        cfg.system = preset(name)?;
        cfg.preset = Some(name.clone());
    }
    if let Some(dir) = &cli.out {
        cfg.out_dir = dir.clone();
    }
    if let Some(r) = cli.a_range {
        cfg.a_range = r;
    }
    if let Some(r) = cli.e_range {
        cfg.e_range = r;
    }
    if cli.format.is_some() {
        cfg.format = cli.format;
    }
    cfg.outputs = [output].into_iter().collect();
    cfg.validate()?;
    Ok(cfg)
}

fn print_presets(format: Option<Format>) {
    let catalog = presets();
    if format == Some(Format::Json) {
        let map: serde_json::Map<String, serde_json::Value> = catalog
            .iter()
            .map(|(n, s)| (n.to_string(), serde_json::to_value(s).expect("preset serializes")))
            .collect();
        println!("{}", serde_json::to_string_pretty(&map).expect("presets serialize"));
        return;
    }
    println!(
        "{:<12} {:>3} {:>22} {:>22} {:>12} {:>12}",
        "name", "ch", "e1(a)", "e2(a)", "gamma/2", "omega"
    );
    for (name, sys) in &catalog {
        for (c, ch) in sys.channels().iter().enumerate() {
            let traj = |t: &epscan::LevelTrajectory| format!("{}{:+}a", t.e_intercept, t.e_slope);
            println!(
                "{:<12} {:>3} {:>22} {:>22} {:>12} {:>12}",
                name,
                c + 1,
                traj(&ch.state1),
                traj(&ch.state2),
                format!("{}, {}", ch.state1.gamma_half, ch.state2.gamma_half),
                format!("{}{:+}i", ch.omega.re, ch.omega.im)
            );
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match cli.command {
        Command::Presets => {
            print_presets(cli.format);
            return ExitCode::SUCCESS;
        }
        Command::Sweep => Output::Sweep,
        Command::Critical => Output::Critical,
        Command::Spectrum => Output::Spectrum,
        Command::Contour => Output::Contour,
        Command::Correlate => Output::Correlation,
    };
    let text = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(4);
            }
        },
        None => None,
    };
    let cfg = match build_config(&cli, text.as_deref(), output) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cfg) {
        Ok(manifest) => {
            for f in &manifest.files {
                println!("{}  {}", f.sha256, cfg.out_dir.join(&f.file).display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
