//! Exponents of the three Euler modes and their damped counterparts over a
//! small (ω, k) grid, as CSV.

use smith_pml::report::mode_table;
use smith_pml::FlowParams;

fn main() -> smith_pml::Result<()> {
    let flow = FlowParams::new(200.0, 100.0, 1.0, 300.0)?;
    let omegas = [-200.0, -50.0, 50.0, 200.0, 400.0];
    let ks = [-2.0, -0.5, 0.5, 2.0];
    print!("{}", mode_table(&flow, &omegas, &ks, 40.0));
    Ok(())
}
