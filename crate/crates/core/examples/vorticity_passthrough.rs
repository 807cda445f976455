//! The layer acts on pressure only, so vorticity inside it matches the
//! reference run to rounding.

use smith_pml::harness::{relative_error, run_reference, ExperimentConfig, TimeWindow, Variable};
use smith_pml::solver::run;

fn main() -> smith_pml::Result<()> {
    let cfg = ExperimentConfig::desk_baseline();
    let reference = run_reference(&cfg)?;
    for (n, sigma) in [(38, 40.0), (8, 160.0)] {
        let c = cfg.with_layer(n, sigma)?;
        let out = run(&c)?;
        let w = relative_error(&out, &reference, Variable::Vorticity, c.layer_region(), TimeWindow::all())?;
        let p = relative_error(&out, &reference, Variable::P, c.euler_region(), TimeWindow::all())?;
        println!("({n:2}, {sigma:5}): layer vorticity error {w:.2e} %, physical p error {p:.2} %");
    }
    Ok(())
}
