//! Plane-wave check of the auxiliary-field realization of the stretched
//! derivative under grid refinement.

use smith_pml::solver::{aux_consistency, observed_orders};
use smith_pml::{FlowParams, FourierPoint};

fn main() -> smith_pml::Result<()> {
    let flow = FlowParams::new(1.0, 0.0, 1.0, 2.0)?;
    let pt = FourierPoint::new(1.0, 0.0);
    let runs = [40, 80, 160, 320]
        .iter()
        .map(|&n| aux_consistency(&flow, &pt, 1.0, 2.0, n, 0.5, 12.0))
        .collect::<smith_pml::Result<Vec<_>>>()?;
    println!("lambda2 = {:.6}, lambda2_pml = {:.6}", runs[0].lambda2, runs[0].lambda2_pml);
    for r in &runs {
        println!("cells {:4}  dx {:.4}  error {:.3e}", r.cells, r.dx, r.rel_error);
    }
    println!("observed orders {:.2?}", observed_orders(&runs));
    Ok(())
}
