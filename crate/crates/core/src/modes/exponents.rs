use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{validate_flow, FlowParams, FlowUse, FourierPoint};
use crate::polymat::symbols::{a_factor, s_symbol};

/// Whether the acoustic exponents are imaginary or real.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Propagative,
    Evanescent,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Propagative => "propagative",
            Regime::Evanescent => "evanescent",
        }
    }
}

/// Exponents of the three Euler modes `e^{λx}` at one Fourier point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponents {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    pub lambda3: Complex64,
    pub regime: Regime,
}

impl Exponents {
    pub fn as_array(&self) -> [Complex64; 3] {
        [self.lambda1, self.lambda2, self.lambda3]
    }
}

/// Exponents inside an x-layer of constant damping σ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PmlModeSet {
    pub lambda1_pml: Complex64,
    pub lambda2_pml: Complex64,
    pub lambda3_pml: Complex64,
    pub a_factor: Complex64,
}

impl PmlModeSet {
    pub fn as_array(&self) -> [Complex64; 3] {
        [self.lambda1_pml, self.lambda2_pml, self.lambda3_pml]
    }
}

/// Relative width of the band around `|k|√(c̄²−ū²) = |ω+kv̄|` that is treated
/// as the branch boundary.
const BRANCH_TOL: f64 = 1e-12;

/// λ₁ is the root of 𝒢̂, λ₂ and λ₃ the roots of ℒ̂.
///
/// Propagative when `|k|√(c̄²−ū²) < |ω+kv̄|`; then
/// `λ₂,₃ = s(ū ∓ c̄√(1 − k²(c̄²−ū²)/Ω²))/(c̄²−ū²)` with `s = iΩ`. Otherwise
/// `λ₂,₃ = (ūs ∓ c̄√(k²(c̄²−ū²) − Ω²))/(c̄²−ū²)` so that `Re λ₂ < 0 < Re λ₃`.
pub fn lambdas(flow: &FlowParams, pt: &FourierPoint) -> Result<Exponents> {
    let flow = validate_flow(*flow, FlowUse::ModeAnalysis)?;
    let omega_s = pt.shifted(&flow);
    let s = s_symbol(&flow, pt);
    let beta = flow.beta_x();
    let c = flow.c_bar;
    let u = flow.u_bar;
    if omega_s == 0.0 && pt.k == 0.0 {
        return Err(Error::DegenerateFrequency("ω + k·v = 0 and k = 0"));
    }
    let lhs = pt.k.abs() * beta.sqrt();
    let rhs = omega_s.abs();
    if (lhs - rhs).abs() <= BRANCH_TOL * lhs.max(rhs) {
        return Err(Error::BranchBoundary);
    }
    let lambda1 = -s / u;
    let (lambda2, lambda3, regime) = if lhs < rhs {
        let root = (1.0 - pt.k * pt.k * beta / (omega_s * omega_s)).sqrt();
        (
            s * (u - c * root) / beta,
            s * (u + c * root) / beta,
            Regime::Propagative,
        )
    } else {
        let root = (pt.k * pt.k * beta - omega_s * omega_s).sqrt();
        (
            (u * s - c * root) / beta,
            (u * s + c * root) / beta,
            Regime::Evanescent,
        )
    };
    Ok(Exponents {
        lambda1,
        lambda2,
        lambda3,
        regime,
    })
}

/// Maps an Euler exponent to its layer counterpart: `(λ − μs)/a + μs`.
pub fn to_pml(flow: &FlowParams, pt: &FourierPoint, a: Complex64, lambda: Complex64) -> Complex64 {
    let mus = flow.u_bar / flow.beta_x() * s_symbol(flow, pt);
    (lambda - mus) / a + mus
}

/// Layer exponents for constant damping σ. `λ₁^pml = λ₁` always.
pub fn lambdas_pml(flow: &FlowParams, pt: &FourierPoint, sigma: f64) -> Result<PmlModeSet> {
    if !(sigma >= 0.0) {
        return Err(Error::InvalidLayer(format!("sigma must be ≥ 0, got {sigma}")));
    }
    let ex = lambdas(flow, pt)?;
    let a = a_factor(flow, pt, sigma)?;
    if sigma == 0.0 {
        return Ok(PmlModeSet {
            lambda1_pml: ex.lambda1,
            lambda2_pml: ex.lambda2,
            lambda3_pml: ex.lambda3,
            a_factor: a,
        });
    }
    if a.norm() == 0.0 {
        return Err(Error::DegenerateFrequency("ω + kv̄ = 0 makes the layer map singular"));
    }
    Ok(PmlModeSet {
        lambda1_pml: ex.lambda1,
        lambda2_pml: to_pml(flow, pt, a, ex.lambda2),
        lambda3_pml: to_pml(flow, pt, a, ex.lambda3),
        a_factor: a,
    })
}

/// `exp(Re λ₂^pml · δ)`, the amplitude left in the transmitted acoustic mode
/// after crossing a layer of width δ.
pub fn finite_layer_decay(flow: &FlowParams, pt: &FourierPoint, sigma: f64, delta: f64) -> Result<f64> {
    let m = lambdas_pml(flow, pt, sigma)?;
    Ok((m.lambda2_pml.re * delta).exp())
}
