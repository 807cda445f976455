//! Ricker pulse in the oblique flow, with layers on all sides. Writes probe
//! series and pressure snapshots to `target/pulse_in_box/`.

use std::path::Path;

use smith_pml::harness::ExperimentConfig;
use smith_pml::io::{probe_csv, write_frames};
use smith_pml::solver::run;

fn main() -> smith_pml::Result<()> {
    let mut cfg = ExperimentConfig::desk_baseline();
    cfg.snapshot_every = 250;
    let out = run(&cfg)?;
    let dir = Path::new("target/pulse_in_box");
    write_frames(dir, &out)?;
    std::fs::write(dir.join("probes.csv"), probe_csv(&out))?;
    for f in &out.frames {
        println!("step {:5}  t {:.4}  max|p| {:.3e}", f.step, f.t, f.p.max_abs());
    }
    println!("wrote {}", dir.display());
    Ok(())
}
