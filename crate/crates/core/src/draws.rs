//! Seeded random draws of flows, Fourier points and damping values for the
//! randomized verification sweeps.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::params::{FlowParams, FourierPoint};

/// One sample of the frequency-domain checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Draw {
    pub flow: FlowParams,
    pub pt: FourierPoint,
    pub sigma: f64,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Subsonic flow with `ū > 0`, Mach number in `[0.05, 0.85]` and a heading
/// within 80° of the x axis.
pub fn random_flow(rng: &mut impl Rng) -> FlowParams {
    let c = rng.gen_range(200.0..400.0);
    let rho = rng.gen_range(0.5..2.0);
    let mach = rng.gen_range(0.05..0.85);
    let heading: f64 = rng.gen_range(-1.4..1.4);
    FlowParams::new(mach * c * heading.cos(), mach * c * heading.sin(), rho, c).expect("subsonic by construction")
}

/// `(ω, k)` with `k ≠ 0`, `|ω + kv̄| ≥ 1` and at least 5% away from the
/// propagative/evanescent boundary.
pub fn random_point(rng: &mut impl Rng, flow: &FlowParams) -> FourierPoint {
    loop {
        let omega = rng.gen_range(-200.0..200.0);
        let k = rng.gen_range(0.05..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let pt = FourierPoint::new(omega, k);
        let shifted = pt.shifted(flow).abs();
        let edge = k.abs() * flow.beta_x().sqrt();
        if shifted >= 1.0 && (shifted / edge - 1.0).abs() > 0.05 {
            return pt;
        }
    }
}

/// `n` draws with σ uniform in `[0, sigma_max]`.
pub fn random_draws(seed: u64, n: usize, sigma_max: f64) -> Vec<Draw> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let flow = random_flow(&mut r);
            let pt = random_point(&mut r, &flow);
            let sigma = r.gen_range(0.0..=sigma_max);
            Draw { flow, pt, sigma }
        })
        .collect()
}

/// `n` points uniformly distributed in the disc of radius `radius`.
pub fn disc_samples(rng: &mut impl Rng, n: usize, radius: f64) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let r = radius * rng.gen_range(0.0f64..1.0).sqrt();
            Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
        })
        .collect()
}
