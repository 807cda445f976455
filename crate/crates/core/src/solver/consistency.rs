//! Plane-wave check of the auxiliary realization of `∂x^pml`.
//!
//! A damped acoustic mode `φ = e^{iωt + λ₂^pml x}` is prescribed on a 1D
//! strip with constant σ. Once the auxiliary field `d` has forgotten its zero
//! start, `(∂xφ + d)/φ` on the faces should equal the undamped exponent λ₂.

use num_complex::Complex64;

use super::field::Field2;
use super::stepper::dx_pml_aux_update;
use crate::error::Result;
use crate::modes::{lambdas, lambdas_pml};
use crate::params::{time_step, FlowParams, FourierPoint, GridSpec};

/// Result of one resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxConsistency {
    pub cells: usize,
    pub dx: f64,
    pub dt: f64,
    pub lambda2: Complex64,
    pub lambda2_pml: Complex64,
    /// `max |(∂xφ + d)/φ − λ₂| / |λ₂|` over the interior faces.
    pub rel_error: f64,
}

/// Runs the check on `[0, length]` with `cells` cells, integrating until
/// `t_end`. The first and last two faces are left out of the error so that
/// the zero padding outside the strip does not enter.
pub fn aux_consistency(
    flow: &FlowParams,
    pt: &FourierPoint,
    sigma: f64,
    length: f64,
    cells: usize,
    cfl: f64,
    t_end: f64,
) -> Result<AuxConsistency> {
    let ex = lambdas(flow, pt)?;
    let pm = lambdas_pml(flow, pt, sigma)?;
    let lp = pm.lambda2_pml;
    let grid = GridSpec::new(length, length / cells as f64, cells, 1, cfl)?;
    let dt = time_step(&grid, flow);
    let dx = grid.dx();
    let sigma_face = vec![sigma; cells + 1];
    let mode = |x: f64, t: f64| (Complex64::new(0.0, pt.omega * t) + lp * x).exp();
    let sample = |t: f64, part: fn(Complex64) -> f64| {
        Field2::from_fn(cells, 1, |i, _| part(mode((i as f64 + 0.5) * dx, t)))
    };
    let parts: [fn(Complex64) -> f64; 2] = [|z| z.re, |z| z.im];

    let steps = (t_end / dt).ceil() as usize;
    let mut d = [Field2::zeros(cells + 1, 1), Field2::zeros(cells + 1, 1)];
    for n in 0..steps {
        let (t0, t1) = (n as f64 * dt, (n + 1) as f64 * dt);
        for (k, part) in parts.iter().enumerate() {
            d[k] = dx_pml_aux_update(&d[k], &sample(t0, *part), &sample(t1, *part), &sigma_face, flow, &grid, dt);
        }
    }

    let t = steps as f64 * dt;
    let phi = [sample(t, parts[0]), sample(t, parts[1])];
    let mut worst = 0.0f64;
    for i in 2..cells - 1 {
        let z = |f: &Field2| (f.at(i, 0) - f.at(i - 1, 0)) / dx;
        let grad = Complex64::new(z(&phi[0]), z(&phi[1]));
        let dd = Complex64::new(d[0].at(i, 0), d[1].at(i, 0));
        let est = (grad + dd) / mode(i as f64 * dx, t);
        worst = worst.max((est - ex.lambda2).norm() / ex.lambda2.norm());
    }
    Ok(AuxConsistency {
        cells,
        dx,
        dt,
        lambda2: ex.lambda2,
        lambda2_pml: lp,
        rel_error: worst,
    })
}

/// Observed orders `log2(e_k / e_{k+1})` of a sequence of halvings.
pub fn observed_orders(runs: &[AuxConsistency]) -> Vec<f64> {
    runs.windows(2)
        .map(|w| (w[0].rel_error / w[1].rel_error).ln() / (w[0].dx / w[1].dx).ln())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (FlowParams, FourierPoint) {
        (FlowParams::new(1.0, 0.0, 1.0, 2.0).unwrap(), FourierPoint::new(1.0, 0.0))
    }

    #[test]
    fn first_order_under_refinement() {
        let (flow, pt) = setup();
        let runs: Vec<_> = [40, 80, 160]
            .iter()
            .map(|&n| aux_consistency(&flow, &pt, 1.0, 2.0, n, 0.5, 12.0).unwrap())
            .collect();
        assert!(runs[2].rel_error < runs[0].rel_error);
        for o in observed_orders(&runs) {
            assert!(o >= 0.8, "order {o}, runs {runs:?}");
        }
    }

    #[test]
    fn zero_sigma_is_plain_derivative() {
        let (flow, pt) = setup();
        let r = aux_consistency(&flow, &pt, 0.0, 2.0, 80, 0.5, 1.0).unwrap();
        assert_eq!(r.lambda2, r.lambda2_pml);
        // Only the centred difference error of ∂x remains.
        assert!(r.rel_error < 1e-3, "{}", r.rel_error);
    }
}
