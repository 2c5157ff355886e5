//! The full pipeline driven by a configuration document, as the `epscan`
//! binary does it.
//!
//! Run with `cargo run --example run_config -- [out_dir]`

use epscan::config::parse_config;
use epscan::output::run;

const CONFIG: &str = "\
# fig1-right with a weaker second channel, on a light grid
preset = fig1-right
channel2.omega_im = 0.08
a_range.n = 131
e_range.n = 301
outputs = sweep, critical, spectrum, contour, correlation
";

fn main() {
    let mut cfg = parse_config(CONFIG).unwrap_or_else(|e| panic!("bad config: {e}"));
    cfg.out_dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "out/run_config".into())
        .into();
    match run(&cfg) {
        Ok(manifest) => {
            for f in manifest.files {
                println!("{:>9} bytes  {}  {}", f.bytes, &f.sha256[..16], f.file);
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
