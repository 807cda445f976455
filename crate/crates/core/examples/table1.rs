//! Layer-parameter sweep against one shared reference run.
//!
//! Prints the table CSV to stdout.

use std::time::Instant;

use smith_pml::harness::{sweep_csv, table1_sweep, ExperimentConfig, TABLE1_CELLS};

fn main() -> smith_pml::Result<()> {
    let cfg = ExperimentConfig::desk_baseline();
    let t0 = Instant::now();
    let cells = table1_sweep(&cfg, &TABLE1_CELLS)?;
    print!("{}", sweep_csv(&cfg.flow, &cells));
    eprintln!("sweep took {:.1} s", t0.elapsed().as_secs_f64());
    Ok(())
}
