//! Invariant factors of the Euler symbol and of the layer symbol at one
//! Fourier point, plus the factorization residual.

use num_complex::Complex64;
use smith_pml::polymat::symbols::{g_hat, l_hat, l_pml_hat};
use smith_pml::polymat::{build_euler_symbol, build_model2_symbol, smith_diagonal, verify_factorization};
use smith_pml::{FlowParams, FourierPoint};

fn main() -> smith_pml::Result<()> {
    let flow = FlowParams::new(200.0, 100.0, 1.0, 300.0)?;
    let pt = FourierPoint::new(120.0, 0.7);
    let sigma = 40.0;

    let samples: Vec<Complex64> = (0..8).map(|j| Complex64::from_polar(0.8, j as f64)).collect();
    println!("residual |EDF - A|/|A| = {:.2e}", verify_factorization(&flow, &pt, &samples)?);

    let sd = smith_diagonal(&build_euler_symbol(&flow, &pt))?;
    println!("Euler symbol degrees {:?}", sd.degrees());
    let gl = &g_hat(&flow, &pt) * &l_hat(&flow, &pt);
    println!("  d3 monic: {:?}", sd.d[2].monic().coeffs());
    println!("  G L monic: {:?}", gl.monic().coeffs());

    let sd2 = smith_diagonal(&build_model2_symbol(&flow, &pt, sigma)?)?;
    println!("layer symbol degrees {:?}", sd2.degrees());
    let glp = &g_hat(&flow, &pt) * &l_pml_hat(&flow, &pt, sigma)?;
    println!("  d4 monic: {:?}", sd2.d[3].monic().coeffs());
    println!("  G L^pml monic: {:?}", glp.monic().coeffs());
    Ok(())
}
