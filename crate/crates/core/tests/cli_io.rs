use std::fs;
use std::path::Path;
use std::process::Command;

use epscan::config::{GridRange, Output, RunConfig};
use epscan::observables::{linspace, run_sweep};
use epscan::output::{run, sha256_hex, sweep_header};

fn small(preset: &str, outputs: &[Output], dir: &Path) -> RunConfig {
    let mut cfg = RunConfig::from_preset(preset).unwrap();
    cfg.a_range = GridRange::new(0.0, 1.3, 66);
    cfg.e_range = GridRange::new(-1.0, 2.0, 61);
    cfg.outputs = outputs.iter().copied().collect();
    cfg.out_dir = dir.to_path_buf();
    cfg
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_epscan"))
}

#[test]
fn sweep_csv_schema_and_fidelity() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small("fig1-left", &[Output::Sweep], dir.path());
    run(&cfg).unwrap();
    let text = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header, sweep_header());
    assert_eq!(header.len(), 1 + 2 * (2 * 6 + 1));
    assert_eq!(
        &header[..8],
        [
            "a",
            "E_1_1",
            "G_1_1",
            "r_1_1",
            "A_1_1",
            "b_11_sq_1",
            "b_12_sq_1",
            "E_2_1"
        ]
    );
    assert_eq!(header[13], "ep_flag_1");
    assert_eq!(header.last(), Some(&"ep_flag_2"));

    let records = run_sweep(&cfg.system, &cfg.a_range.points(), cfg.ep_tol).unwrap();
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), records.len());
    for (row, rec) in rows.iter().zip(&records) {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells[0].parse::<f64>().unwrap().to_bits(), rec.a.to_bits());
        let (sol, obs) = rec.channels[0].branch(1);
        assert_eq!(cells[1].parse::<f64>().unwrap().to_bits(), sol.energy().to_bits());
        assert_eq!(cells[2].parse::<f64>().unwrap().to_bits(), sol.width().to_bits());
        assert_eq!(cells[3].parse::<f64>().unwrap().to_bits(), obs.rigidity.to_bits());
    }
}

#[test]
fn critical_json_holds_the_report() {
    let dir = tempfile::tempdir().unwrap();
    run(&small("symmetric", &[Output::Critical], dir.path())).unwrap();
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("critical.json")).unwrap()).unwrap();
    assert!((v["a_cr"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-5);
    assert_eq!(v["channels"].as_array().unwrap().len(), 2);
    assert!(v["channels"][0]["bifurcation"]["a_cr_rigidity"].is_number());
}

#[test]
fn contour_writes_csv_and_marked_heatmap() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small("fig1-left", &[Output::Contour], dir.path());
    let manifest = run(&cfg).unwrap();
    let csv = fs::read_to_string(dir.path().join("contour.csv")).unwrap();
    assert!(csv.starts_with("a,E,T\n"));
    assert_eq!(csv.lines().count(), 1 + 66 * 61);
    let svg = fs::read_to_string(dir.path().join("contour.svg")).unwrap();
    let cells = svg
        .lines()
        .filter(|l| l.starts_with("<rect") && !l.contains("fill=\"none\""))
        .count();
    assert_eq!(cells, 66 * 61);
    assert!(svg.contains("class=\"a-cr\""));

    let names: Vec<&str> = manifest.files.iter().map(|f| f.file.as_str()).collect();
    assert_eq!(names, ["contour.csv", "contour.svg"]);
    for f in &manifest.files {
        let bytes = fs::read(dir.path().join(&f.file)).unwrap();
        assert_eq!(f.bytes, bytes.len());
        assert_eq!(f.sha256, sha256_hex(&bytes));
    }
    assert!(dir.path().join("manifest.json").exists());
}

#[test]
fn spectrum_and_correlation() {
    let dir = tempfile::tempdir().unwrap();
    run(&small(
        "fig1-left",
        &[Output::Spectrum, Output::Correlation],
        dir.path(),
    ))
    .unwrap();
    let spectrum = fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    assert_eq!(spectrum.lines().next(), Some("a,E,T"));
    assert_eq!(spectrum.lines().count(), 1 + 3 * 61);
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("correlation.json")).unwrap()).unwrap();
    assert!(v["pearson"].as_f64().unwrap() < 0.0);
}

#[test]
fn identical_configs_give_identical_manifests() {
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let all = [
        Output::Sweep,
        Output::Critical,
        Output::Spectrum,
        Output::Contour,
        Output::Correlation,
    ];
    let m1 = run(&small("fig1-right", &all, d1.path())).unwrap();
    let m2 = run(&small("fig1-right", &all, d2.path())).unwrap();
    assert_eq!(m1, m2);
    assert_eq!(
        fs::read(d1.path().join("manifest.json")).unwrap(),
        fs::read(d2.path().join("manifest.json")).unwrap()
    );
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let ok = bin()
        .args(["critical", "--preset", "fig1-left", "--a-range", "0:1.3:131", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(out.join("critical.json").exists());

    let presets = bin().args(["presets", "--format", "json"]).output().unwrap();
    assert_eq!(presets.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&presets.stdout).unwrap();
    assert!(v.get("fig2").is_some());

    let bad_preset = bin()
        .args(["sweep", "--preset", "nosuch", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(bad_preset.status.code(), Some(2));
    let bad_range = bin()
        .args(["sweep", "--a-range", "1:0:10", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(bad_range.status.code(), Some(2));
    let bad_format = bin()
        .args(["critical", "--format", "svg", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(bad_format.status.code(), Some(2));

    let missing = bin()
        .args(["sweep", "--config"])
        .arg(dir.path().join("absent.cfg"))
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(4));
    // output directory blocked by a regular file
    let blocker = dir.path().join("blocker");
    fs::write(&blocker, "x").unwrap();
    let io = bin()
        .args(["sweep", "--a-range", "0:1:5", "--out"])
        .arg(&blocker)
        .output()
        .unwrap();
    assert_eq!(io.status.code(), Some(4));

    // ω = 0 with a zero width makes the transmission poles degenerate
    let cfg = dir.path().join("zero.cfg");
    fs::write(&cfg, "preset = fig2\nchannel1.state1.gamma_half = 0\n").unwrap();
    let comp = bin()
        .args(["spectrum", "--e-range", "-1:2:31", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(comp.status.code(), Some(3), "{}", String::from_utf8_lossy(&comp.stderr));
}

#[test]
fn config_file_drives_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("out");
    fs::write(
        &cfg,
        format!(
            "# small sweep\npreset = fig1-left\na_range.n = 14\nout_dir = {}\n",
            out.display()
        ),
    )
    .unwrap();
    let status = bin().arg("sweep").arg("--config").arg(&cfg).output().unwrap();
    assert_eq!(
        status.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let text = fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert_eq!(text.lines().count(), 15);
    let a: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(a, linspace(0.0, 1.3, 14));
}
