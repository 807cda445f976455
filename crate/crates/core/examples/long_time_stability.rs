//! Five horizons of the baseline run. Prints block maxima every 500 steps
//! and the verdict.

use smith_pml::harness::{stability_probe, ExperimentConfig};

fn main() -> smith_pml::Result<()> {
    let cfg = ExperimentConfig::desk_baseline();
    let t = stability_probe(&cfg, 5)?;
    for (b, m) in t.blocks.iter().enumerate().step_by(5) {
        println!("steps {:5}-{:5}  p {:.2e}  u {:.2e}  v {:.2e}", b * t.block + 1, (b + 1) * t.block, m[0], m[1], m[2]);
    }
    println!("first quarter p {:.2e} u {:.2e} v {:.2e}", t.first_quarter[0], t.first_quarter[1], t.first_quarter[2]);
    println!("last quarter  p {:.2e} u {:.2e} v {:.2e}", t.last_quarter[0], t.last_quarter[1], t.last_quarter[2]);
    println!("stable: {}", t.passed);
    Ok(())
}
