//! Operator symbols at a fixed Fourier point `(ω, k)`, as polynomials in the
//! symbol λ of `∂x`.

use num_complex::Complex64;

use super::matrix::{frobenius, PolyMatrix};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::params::{validate_flow, FlowParams, FlowUse, FourierPoint};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `s = iω + ikv̄`, the symbol of `∂t + v̄∂y`.
pub fn s_symbol(flow: &FlowParams, pt: &FourierPoint) -> Complex64 {
    I * pt.shifted(flow)
}

/// Transport symbol `𝒢̂ = s + ūλ`.
pub fn g_hat(flow: &FlowParams, pt: &FourierPoint) -> Poly {
    Poly::linear(s_symbol(flow, pt), re(flow.u_bar))
}

/// Advective wave symbol
/// `ℒ̂ = −ω² + 2ikūv̄λ + 2iω(ūλ + ikv̄) + (c̄²−v̄²)k² − (c̄²−ū²)λ²`.
pub fn l_hat(flow: &FlowParams, pt: &FourierPoint) -> Poly {
    let FlowParams {
        u_bar: u,
        v_bar: v,
        c_bar: c,
        ..
    } = *flow;
    let (w, k) = (pt.omega, pt.k);
    Poly::new(vec![
        re(-w * w - 2.0 * w * k * v + (c * c - v * v) * k * k),
        I * (2.0 * k * u * v + 2.0 * w * u),
        re(-(c * c - u * u)),
    ])
}

/// The scalar `a = c̄s / (c̄s + (c̄²−ū²)σ)`, symbol of the layer operator α(x)
/// for frequency-independent σ.
pub fn a_factor(flow: &FlowParams, pt: &FourierPoint, sigma: f64) -> Result<Complex64> {
    let cs = flow.c_bar * s_symbol(flow, pt);
    let den = cs + flow.beta_x() * sigma;
    if den.norm() == 0.0 {
        return Err(Error::DegenerateFrequency(
            "the layer denominator c(iω+ikv)+(c²−u²)σ vanishes",
        ));
    }
    Ok(cs / den)
}

/// Symbol of `∂x^pml` as a polynomial in λ: `aλ + (1−a)μs`.
pub fn dx_pml_symbol(flow: &FlowParams, pt: &FourierPoint, sigma: f64) -> Result<Poly> {
    let a = a_factor(flow, pt, sigma)?;
    let mu = flow.u_bar / flow.beta_x();
    Ok(Poly::linear((re(1.0) - a) * mu * s_symbol(flow, pt), a))
}

/// `ℒ̂^pml`, i.e. ℒ̂ with λ replaced by the symbol of `∂x^pml`.
pub fn l_pml_hat(flow: &FlowParams, pt: &FourierPoint, sigma: f64) -> Result<Poly> {
    Ok(l_hat(flow, pt).compose(&dx_pml_symbol(flow, pt, sigma)?))
}

/// The 3×3 symbol of the linearized Euler system, unknowns `(p, u, v)`.
pub fn build_euler_symbol(flow: &FlowParams, pt: &FourierPoint) -> PolyMatrix {
    let g = g_hat(flow, pt);
    let rc2 = flow.rho_bar * flow.c_bar * flow.c_bar;
    let l = Poly::lambda();
    PolyMatrix::from_rows(vec![
        vec![g.clone(), l.scaled(re(rc2)), Poly::constant(I * rc2 * pt.k)],
        vec![l.scaled(re(1.0 / flow.rho_bar)), g.clone(), Poly::zero()],
        vec![Poly::constant(I * pt.k / flow.rho_bar), Poly::zero(), g],
    ])
}

/// The unimodular factors `E`, `F` and `D = diag(1, 1, 𝒢̂ℒ̂)` with `Â = EDF`.
///
/// `F` is the standard choice. `E` is obtained as `Â F⁻¹ D⁻¹`, which is a
/// polynomial matrix with constant determinant.
pub fn build_factors(
    flow: &FlowParams,
    pt: &FourierPoint,
) -> Result<(PolyMatrix, PolyMatrix, PolyMatrix)> {
    let flow = validate_flow(*flow, FlowUse::ModeAnalysis)?;
    let s = s_symbol(&flow, pt);
    if pt.k == 0.0 {
        return Err(Error::DegenerateFrequency("k = 0"));
    }
    if s.norm() == 0.0 {
        return Err(Error::DegenerateFrequency("ω + k·v = 0"));
    }
    let FlowParams {
        u_bar: u,
        rho_bar: rho,
        c_bar: c,
        ..
    } = flow;
    let c2 = c * c;
    let ik = I * pt.k;
    let g = g_hat(&flow, pt);
    let l = Poly::lambda();
    let minus = re(-1.0);

    let f = PolyMatrix::from_rows(vec![
        vec![g.scaled((ik * rho * c2).inv()), l.scaled(ik.inv()), Poly::one()],
        vec![l.scaled(re(1.0 / (rho * u))), g.scaled(re(1.0 / u)), Poly::zero()],
        vec![
            Poly::constant(u / s),
            Poly::constant(rho * u * u / s),
            Poly::zero(),
        ],
    ])
    .map(|p| p.scaled(minus));

    let e2 = Poly::new(vec![
        u * (s * s + pt.k * pt.k * c2),
        (2.0 * u * u - c2) * s,
        re(-u * c2 + u * u * u),
    ])
    .scaled(u / (c2 * s));
    let e = PolyMatrix::from_rows(vec![
        vec![Poly::constant(ik * rho * c2), Poly::zero(), Poly::zero()],
        vec![Poly::zero(), Poly::constant(re(u)), Poly::zero()],
        vec![
            g.clone(),
            e2.scaled(ik.inv()),
            Poly::constant(-(ik * rho * c2 * u).inv()),
        ],
    ])
    .map(|p| p.scaled(minus));

    let d = PolyMatrix::diag(vec![Poly::one(), Poly::one(), &g * &l_hat(&flow, pt)]);
    Ok((e, d, f))
}

/// Largest relative Frobenius residual `‖E D F − Â‖ / ‖Â‖` over the samples.
pub fn verify_factorization(
    flow: &FlowParams,
    pt: &FourierPoint,
    samples: &[Complex64],
) -> Result<f64> {
    let (e, d, f) = build_factors(flow, pt)?;
    let a = build_euler_symbol(flow, pt);
    Ok(samples
        .iter()
        .map(|&x| {
            let ax = a.eval(x);
            let r = e.eval(x) * d.eval(x) * f.eval(x) - &ax;
            frobenius(&r) / frobenius(&ax)
        })
        .fold(0.0, f64::max))
}

/// Left multiplier `El` that isolates the pressure equation.
pub fn build_el(flow: &FlowParams, pt: &FourierPoint) -> PolyMatrix {
    let rc2 = flow.rho_bar * flow.c_bar * flow.c_bar;
    PolyMatrix::from_rows(vec![
        vec![
            g_hat(flow, pt),
            Poly::lambda().scaled(re(-rc2)),
            Poly::constant(-I * rc2 * pt.k),
        ],
        vec![Poly::zero(), Poly::one(), Poly::zero()],
        vec![Poly::zero(), Poly::zero(), Poly::one()],
    ])
}

/// Expected product `El·Â`: the Euler symbol with first row `(ℒ̂, 0, 0)`.
pub fn pressure_reduced_symbol(flow: &FlowParams, pt: &FourierPoint) -> PolyMatrix {
    let mut m = build_euler_symbol(flow, pt);
    m.set(0, 0, l_hat(flow, pt));
    m.set(0, 1, Poly::zero());
    m.set(0, 2, Poly::zero());
    m
}

/// Largest residual `‖El·Â − expected‖ / (‖El‖‖Â‖)` over the samples.
pub fn verify_pressure_reduction(flow: &FlowParams, pt: &FourierPoint, samples: &[Complex64]) -> f64 {
    let el = build_el(flow, pt);
    let a = build_euler_symbol(flow, pt);
    let want = pressure_reduced_symbol(flow, pt);
    samples
        .iter()
        .map(|&x| {
            let (elx, ax) = (el.eval(x), a.eval(x));
            let r = &elx * &ax - want.eval(x);
            frobenius(&r) / (frobenius(&elx) * frobenius(&ax))
        })
        .fold(0.0, f64::max)
}

/// The 4×4 symbol of the second PML model, unknowns `(𝒫, p, u, v)`.
pub fn build_model2_symbol(flow: &FlowParams, pt: &FourierPoint, sigma: f64) -> Result<PolyMatrix> {
    if !(sigma >= 0.0) {
        return Err(Error::InvalidLayer(format!("sigma must be ≥ 0, got {sigma}")));
    }
    let g = g_hat(flow, pt);
    let diff = &l_pml_hat(flow, pt, sigma)? - &l_hat(flow, pt);
    // Exact cancellation leaves rounding noise; σ = 0 must give the zero
    // polynomial.
    let diff = if sigma == 0.0 { Poly::zero() } else { diff };
    let rc2 = flow.rho_bar * flow.c_bar * flow.c_bar;
    let l = Poly::lambda();
    Ok(PolyMatrix::from_rows(vec![
        vec![g.clone(), Poly::constant(re(-1.0)), Poly::zero(), Poly::zero()],
        vec![diff, g.clone(), l.scaled(re(rc2)), Poly::constant(I * rc2 * pt.k)],
        vec![
            Poly::zero(),
            l.scaled(re(1.0 / flow.rho_bar)),
            g.clone(),
            Poly::zero(),
        ],
        vec![
            Poly::zero(),
            Poly::constant(I * pt.k / flow.rho_bar),
            Poly::zero(),
            g,
        ],
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymat::smith::{ratio_spread, smith_diagonal};

    fn flow() -> FlowParams {
        FlowParams::new(200.0, 100.0, 1.0, 300.0).unwrap()
    }

    fn samples() -> Vec<Complex64> {
        (0..20)
            .map(|j| Complex64::from_polar(0.3 + 0.035 * j as f64, 0.7 * j as f64))
            .collect()
    }

    #[test]
    fn euler_entries() {
        let f = FlowParams::new(1.0, 0.0, 1.0, 2.0).unwrap();
        let pt = FourierPoint::new(1.0, 0.0);
        let a = build_euler_symbol(&f, &pt);
        assert_eq!(*a.get(2, 2), Poly::linear(I, re(1.0)));
        assert!(a.get(0, 2).is_zero() && a.get(2, 0).is_zero());
        let a0 = a.eval(re(0.0));
        assert_eq!(a0[(0, 1)], re(0.0));
        assert_eq!(a0[(1, 1)], I);
    }

    #[test]
    fn constant_term_of_l() {
        let (f, pt) = (flow(), FourierPoint::new(7.0, 3.0));
        let s = s_symbol(&f, &pt);
        let want = s * s + f.c_bar * f.c_bar * pt.k * pt.k;
        assert!((l_hat(&f, &pt).coeff(0) - want).norm() < 1e-9 * want.norm());
    }

    #[test]
    fn factorization_reproduces_symbol() {
        let r = verify_factorization(&flow(), &FourierPoint::new(7.0, 3.0), &samples()).unwrap();
        assert!(r < 1e-10, "residual {r}");
        let rot = Complex64::from_polar(1.0, 0.9);
        let rotated: Vec<_> = samples().iter().map(|x| x * rot).collect();
        let r2 = verify_factorization(&flow(), &FourierPoint::new(7.0, 3.0), &rotated).unwrap();
        assert!(r2 < 1e-10);
    }

    #[test]
    fn factor_determinants_are_constant() {
        let (e, d, f) = build_factors(&flow(), &FourierPoint::new(5.0, -2.0)).unwrap();
        assert_eq!(e.det().trimmed(1e-12).degree(), Some(0));
        assert_eq!(f.det().trimmed(1e-12).degree(), Some(0));
        let a = build_euler_symbol(&flow(), &FourierPoint::new(5.0, -2.0));
        let lhs = &(&e.det() * &d.det()) * &f.det();
        let diff = &lhs - &a.det();
        assert!(diff.scale() < 1e-9 * a.det().scale());
    }

    #[test]
    fn degenerate_frequencies() {
        let f = flow();
        assert_eq!(
            build_factors(&f, &FourierPoint::new(1.0, 0.0)).err(),
            Some(Error::DegenerateFrequency("k = 0"))
        );
        assert!(build_factors(&f, &FourierPoint::new(-100.0, 1.0)).is_err());
    }

    #[test]
    fn pressure_reduction() {
        let (f, pt) = (flow(), FourierPoint::new(5.0, 2.0));
        assert!(verify_pressure_reduction(&f, &pt, &samples()) < 1e-10);
        let prod = build_el(&f, &pt).mul(&build_euler_symbol(&f, &pt));
        assert!(prod.get(0, 1).is_zero() && prod.get(0, 2).is_zero());
        let k0 = FourierPoint::new(5.0, 0.0);
        let prod0 = build_el(&f, &k0).mul(&build_euler_symbol(&f, &k0));
        assert!(prod0.get(2, 0).is_zero());
    }

    #[test]
    fn euler_smith_form() {
        let (f, pt) = (flow(), FourierPoint::new(7.0, 3.0));
        let sd = smith_diagonal(&build_euler_symbol(&f, &pt)).unwrap();
        assert_eq!(sd.degrees(), vec![0, 0, 3]);
        let gl = &g_hat(&f, &pt) * &l_hat(&f, &pt);
        assert!(ratio_spread(&sd.d[2], &gl, &samples()[..4]) < 1e-9);
    }

    #[test]
    fn model2_structure() {
        let (f, pt) = (flow(), FourierPoint::new(50.0, 0.1));
        let m0 = build_model2_symbol(&f, &pt, 0.0).unwrap();
        assert!(m0.get(1, 0).is_zero());
        let m = build_model2_symbol(&f, &pt, 40.0).unwrap();
        assert_eq!(m.det().trimmed(1e-12).degree(), Some(4));
        let sd = smith_diagonal(&m).unwrap();
        assert_eq!(sd.degrees(), vec![0, 0, 1, 3]);
        let g = g_hat(&f, &pt);
        let glp = &g * &l_pml_hat(&f, &pt, 40.0).unwrap();
        assert!(ratio_spread(&sd.d[2], &g, &samples()[..4]) < 1e-9);
        assert!(ratio_spread(&sd.d[3], &glp, &samples()[..4]) < 1e-9);
    }
}
